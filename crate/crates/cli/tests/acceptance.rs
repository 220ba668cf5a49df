//! Acceptance suite: one pass/fail line per criterion, non-zero exit if any fail.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reduct_forge::testing::{
    f1, mask_indices, oracle_core, oracle_reducts, random_netlist, table1,
};
use reduct_forge::{
    all_reducts, approximate, build_decision_table, check_equivalence, core, discernibility_matrix,
    filter_full_coverage_reducts, induce_rules, minimize_netlist, quality_of_classification,
    AttrSet, DecisionRule, DecisionTable, Netlist, ObjectSet, Ratio,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, started: Instant) -> Result<Duration, String> {
    let elapsed = started.elapsed();
    if elapsed > limit {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    } else {
        Ok(elapsed)
    }
}

fn one() -> Ratio {
    Ratio::from_integer(1)
}

fn table_two() -> Outcome {
    let started = Instant::now();
    let t = table1();
    let all = t.all_attrs();
    let classes = t.decision_classes();
    for (class, size) in [(0, 11), (1, 4)] {
        let members = &classes[&class];
        let r = approximate(&t, &all, members).map_err(|e| e.to_string())?;
        ensure!(
            members.len() == size,
            "class {class} has {} objects",
            members.len()
        );
        ensure!(
            r.lower.len() == size && r.upper.len() == size,
            "class {class}: lower {} upper {}",
            r.lower.len(),
            r.upper.len()
        );
        ensure!(
            r.accuracy == Some(one()),
            "class {class} accuracy {:?}",
            r.accuracy
        );
    }
    let gamma = quality_of_classification(&t, &all).map_err(|e| e.to_string())?;
    ensure!(gamma == one(), "quality {gamma}");
    let elapsed = within(Duration::from_secs(1), started)?;
    Ok(format!(
        "classes 0:11/11/11 1:4/4/4, accuracy 1, quality 1 ({elapsed:?})"
    ))
}

/// The reduct list as printed, attribute numbers 1-based.
const PRINTED_REDUCTS: [&[usize]; 44] = [
    &[8, 10],
    &[6, 10, 12],
    &[3, 10, 12],
    &[8, 9],
    &[6, 9, 12],
    &[3, 9, 12],
    &[4, 7, 8],
    &[2, 4, 8],
    &[6, 10, 11],
    &[3, 10, 11],
    &[4, 6, 7, 12],
    &[3, 4, 7, 12],
    &[5, 6, 7, 10],
    &[1, 6, 7, 10],
    &[6, 9, 11],
    &[3, 9, 11],
    &[2, 4, 6, 12],
    &[2, 3, 4, 12],
    &[2, 5, 6, 10],
    &[1, 2, 6, 10],
    &[3, 5, 7, 10],
    &[1, 3, 7, 10],
    &[5, 6, 7, 9],
    &[1, 6, 7, 9],
    &[4, 6, 7, 11],
    &[3, 4, 7, 11],
    &[2, 3, 5, 10],
    &[1, 2, 3, 10],
    &[2, 5, 6, 9],
    &[1, 2, 6, 9],
    &[3, 5, 7, 9],
    &[1, 3, 7, 9],
    &[4, 5, 6, 7],
    &[1, 4, 6, 7],
    &[2, 4, 6, 11],
    &[2, 3, 4, 11],
    &[2, 3, 5, 9],
    &[1, 2, 3, 9],
    &[3, 4, 5, 7],
    &[1, 3, 4, 7],
    &[2, 4, 5, 6],
    &[1, 2, 4, 6],
    &[2, 3, 4, 5],
    &[1, 2, 3, 4],
];

fn numbered(mask: u64) -> String {
    let n: Vec<String> = mask_indices(mask)
        .iter()
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", n.join(","))
}

fn reduct_enumeration() -> Outcome {
    let started = Instant::now();
    let t = table1();
    let found: Vec<u64> = all_reducts(&t)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|r| r.attributes().to_mask().unwrap())
        .collect();
    let elapsed = within(Duration::from_secs(1), started)?;
    let oracle = oracle_reducts(&t);
    ensure!(
        found == oracle,
        "computed {} reducts, oracle {}",
        found.len(),
        oracle.len()
    );
    ensure!(found.len() == 44, "{} reducts", found.len());

    let printed: BTreeSet<u64> = PRINTED_REDUCTS
        .iter()
        .map(|r| r.iter().fold(0, |m, &a| m | 1 << (a - 1)))
        .collect();
    let computed: BTreeSet<u64> = found.iter().copied().collect();
    let missing: Vec<String> = printed
        .difference(&computed)
        .map(|&m| numbered(m))
        .collect();
    let extra: Vec<String> = computed
        .difference(&printed)
        .map(|&m| numbered(m))
        .collect();
    let errata = if missing.is_empty() && extra.is_empty() && printed.len() == 44 {
        "errata: none, printed list matches".to_string()
    } else {
        format!(
            "errata: printed-only {:?}, computed-only {:?}",
            missing, extra
        )
    };
    Ok(format!(
        "44 reducts, identical to oracle over 4096 subsets; {errata} ({elapsed:?})"
    ))
}

fn ten_reducts(t: &DecisionTable) -> Result<Vec<BTreeSet<String>>, String> {
    let all = all_reducts(t).map_err(|e| e.to_string())?;
    Ok(filter_full_coverage_reducts(t, &all, 1)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|r| r.names(t).into_iter().map(str::to_string).collect())
        .collect())
}

fn named(sets: &[&[usize]]) -> BTreeSet<BTreeSet<String>> {
    sets.iter()
        .map(|s| s.iter().map(|a| format!("w{a}")).collect())
        .collect()
}

fn full_coverage_filter() -> Outcome {
    let t = table1();
    let kept = ten_reducts(&t)?;
    let expected = named(&[
        &[8, 9],
        &[8, 10],
        &[3, 9, 11],
        &[3, 9, 12],
        &[6, 9, 11],
        &[6, 9, 12],
        &[6, 10, 12],
        &[6, 10, 11],
        &[3, 10, 11],
        &[3, 10, 12],
    ]);
    let got: BTreeSet<_> = kept.iter().cloned().collect();
    ensure!(kept.len() == 10 && got == expected, "kept {:?}", kept);
    Ok("exactly the 10 expected sets".into())
}

fn rule_reproduction() -> Outcome {
    let t = table1();
    let expected: BTreeSet<BTreeSet<(String, u32)>> = [
        &[("w3", 0), ("w9", 0), ("w11", 0)][..],
        &[("w3", 0), ("w10", 1), ("w12", 1)],
        &[("w3", 0), ("w9", 0), ("w12", 1)],
        &[("w6", 1), ("w9", 0), ("w12", 1)],
        &[("w8", 1), ("w9", 0)],
        &[("w6", 1), ("w10", 1), ("w12", 1)],
        &[("w6", 1), ("w10", 1), ("w11", 0)],
        &[("w8", 1), ("w10", 1)],
        &[("w6", 1), ("w9", 0), ("w11", 0)],
        &[("w3", 0), ("w10", 1), ("w11", 0)],
    ]
    .iter()
    .map(|r| r.iter().map(|&(w, v)| (w.to_string(), v)).collect())
    .collect();

    let all = all_reducts(&t).map_err(|e| e.to_string())?;
    let mut got = BTreeSet::new();
    for r in filter_full_coverage_reducts(&t, &all, 1).map_err(|e| e.to_string())? {
        let rules = induce_rules(&t, &r, 1).map_err(|e| e.to_string())?;
        ensure!(
            rules.len() == 1,
            "{:?} induces {} rules",
            r.names(&t),
            rules.len()
        );
        let m = &rules[0].metrics;
        ensure!(
            m.support == 4 && m.certainty() == Some(one()) && m.coverage() == Some(one()),
            "{} has {}",
            rules[0].rule,
            m
        );
        got.insert(
            rules[0]
                .rule
                .descriptors()
                .iter()
                .map(|d| (d.attribute.clone(), d.value))
                .collect::<BTreeSet<_>>(),
        );
    }
    ensure!(
        got == expected,
        "condition sets differ: {:?}",
        got.symmetric_difference(&expected).collect::<Vec<_>>()
    );
    Ok("10 rules match the rule table, each support 4, certainty 1, coverage 1".into())
}

fn empty_core() -> Outcome {
    let t = table1();
    let c = core(&t).map_err(|e| e.to_string())?;
    ensure!(c.is_empty(), "core {:?}", c.names(&t));
    ensure!(
        oracle_core(&t) == 0,
        "oracle core {}",
        numbered(oracle_core(&t))
    );
    Ok("core is empty, agrees with oracle intersection".into())
}

fn random_table(rng: &mut ChaCha8Rng) -> DecisionTable {
    let objects = rng.gen_range(1..=8);
    let attributes = rng.gen_range(1..=6);
    let classes = rng.gen_range(1..=3);
    let rows = (0..objects)
        .map(|_| {
            let values = (0..attributes).map(|_| rng.gen_range(0..2)).collect();
            (values, rng.gen_range(0..classes))
        })
        .collect();
    let names = (0..attributes).map(|i| format!("a{i}")).collect();
    DecisionTable::new(names, "D", rows).expect("generated table is valid")
}

fn check_table(t: &DecisionTable) -> Result<(), String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let m = t.num_attributes();
    let full_gamma = quality_of_classification(t, &t.all_attrs()).map_err(|e| err(&e))?;
    let oracle = oracle_reducts(t);
    let found: Vec<u64> = all_reducts(t)
        .map_err(|e| err(&e))?
        .iter()
        .map(|r| r.attributes().to_mask().unwrap())
        .collect();
    ensure!(found == oracle, "reducts {:?} oracle {:?}", found, oracle);
    for &mask in &found {
        let gamma = quality_of_classification(t, &AttrSet::from_mask(mask)).map_err(|e| err(&e))?;
        ensure!(
            gamma == full_gamma,
            "reduct {mask:b} has quality {gamma}, full {full_gamma}"
        );
        for i in mask_indices(mask) {
            let sub = AttrSet::from_mask(mask & !(1 << i));
            let g = quality_of_classification(t, &sub).map_err(|e| err(&e))?;
            ensure!(g != full_gamma, "reduct {mask:b} not minimal, drop {i}");
        }
    }
    let universe = t.universe();
    for mask in 0..1u64 << m {
        let attrs = AttrSet::from_mask(mask);
        let mut all_crisp = true;
        for class in t.decision_classes().values() {
            let r = approximate(t, &attrs, class).map_err(|e| err(&e))?;
            ensure!(
                r.lower.is_subset(class) && class.is_subset(&r.upper),
                "lower/upper containment"
            );
            let complement: ObjectSet = universe.difference(class).cloned().collect();
            if !complement.is_empty() {
                let c = approximate(t, &attrs, &complement).map_err(|e| err(&e))?;
                let not_upper: ObjectSet = universe.difference(&r.upper).cloned().collect();
                ensure!(c.lower == not_upper, "duality fails for mask {mask:b}");
            }
            all_crisp &= r.boundary.is_empty();
        }
        let gamma = quality_of_classification(t, &attrs).map_err(|e| err(&e))?;
        ensure!(
            (gamma == one()) == all_crisp,
            "quality {gamma} vs crisp {all_crisp}"
        );
    }
    Ok(())
}

const TABLE_CASES: usize = 600;

fn property_suite() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for case in 0..TABLE_CASES {
        let t = random_table(&mut rng);
        check_table(&t).map_err(|e| format!("case {case}: {e}\n{t}"))?;
    }
    let elapsed = within(Duration::from_secs(30), started)?;
    Ok(format!(
        "{TABLE_CASES} random tables, zero violations ({elapsed:?})"
    ))
}

fn full_coverage_rules(net: &Netlist) -> Result<Vec<DecisionRule>, String> {
    let table = build_decision_table(net).map_err(|e| e.to_string())?;
    ensure!(
        discernibility_matrix(&table).is_consistent(),
        "table of\n{net}is inconsistent"
    );
    let reducts = all_reducts(&table).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for class in table.decision_classes().into_keys() {
        for r in filter_full_coverage_reducts(&table, &reducts, class).map_err(|e| e.to_string())? {
            for induced in induce_rules(&table, &r, class).map_err(|e| e.to_string())? {
                if induced.metrics.certainty() == Some(one())
                    && induced.metrics.coverage() == Some(one())
                {
                    out.push(induced.rule);
                }
            }
        }
    }
    Ok(out)
}

fn check_net(net: &Netlist) -> Result<usize, String> {
    let rules = full_coverage_rules(net)?;
    for rule in &rules {
        let min = minimize_netlist(net, rule).map_err(|e| e.to_string())?;
        let eq = check_equivalence(net, &min).map_err(|e| e.to_string())?;
        ensure!(eq.is_equivalent(), "rule {rule}: {eq:?}\n{net}\n{min}");
        ensure!(
            min.gate_count() <= net.gate_count(),
            "rule {rule} grew the netlist"
        );
        let again = minimize_netlist(&min, rule).map_err(|e| e.to_string())?;
        ensure!(
            again.gate_count() == min.gate_count()
                && check_equivalence(&min, &again)
                    .map_err(|e| e.to_string())?
                    .is_equivalent(),
            "rule {rule} not idempotent"
        );
    }
    Ok(rules.len())
}

const NET_CASES: usize = 150;

fn circuit_end_to_end() -> Outcome {
    let started = Instant::now();
    let mut rules = check_net(&f1()).map_err(|e| format!("F1: {e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for case in 0..NET_CASES {
        let net = random_netlist(&mut |n| rng.gen_range(0..n), 6, 12);
        rules += check_net(&net).map_err(|e| format!("net {case}: {e}"))?;
    }
    let elapsed = within(Duration::from_secs(60), started)?;
    Ok(format!(
        "F1 + {NET_CASES} random netlists, {rules} full-coverage rules minimized soundly ({elapsed:?})"
    ))
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn determinism() -> Outcome {
    let runs: &[&[&str]] = &[
        &["analyze", "--table", "fixtures/table1.csv"],
        &[
            "reducts",
            "--table",
            "fixtures/table1.csv",
            "--full-coverage",
            "1",
            "--core",
        ],
        &[
            "rules",
            "--table",
            "fixtures/table1.csv",
            "w8,w9",
            "--class",
            "1",
        ],
        &["simulate", "--net", "fixtures/f1.net", "--assign", "101"],
        &["table", "--net", "fixtures/f1.net"],
        &[
            "minimize",
            "--net",
            "fixtures/f1.net",
            "--rule",
            "n2=0&n5=0=>0",
        ],
        &[
            "verify",
            "--net-a",
            "fixtures/f1.net",
            "--net-b",
            "fixtures/f1.net",
        ],
    ];
    let exec = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_reduct-forge"))
            .args(args)
            .current_dir(workspace_root())
            .output()
            .map_err(|e| e.to_string())
    };
    let mut count = 0;
    for format in ["text", "json"] {
        for args in runs {
            let args: Vec<&str> = ["--format", format]
                .iter()
                .chain(args.iter())
                .copied()
                .collect();
            let a = exec(&args)?;
            let b = exec(&args)?;
            ensure!(a.status.success(), "{args:?} exited {:?}", a.status.code());
            ensure!(
                a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status,
                "{args:?} differs between runs"
            );
            count += 1;
        }
    }
    Ok(format!(
        "{count} invocations (7 subcommands x text/json) byte-identical across two runs"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 approximations of the example table", table_two),
        ("2 reduct enumeration", reduct_enumeration),
        ("3 full-coverage filter", full_coverage_filter),
        ("4 rule reproduction", rule_reproduction),
        ("5 core", empty_core),
        ("6 randomized property suite", property_suite),
        ("7 circuit end-to-end", circuit_end_to_end),
        ("8 CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
