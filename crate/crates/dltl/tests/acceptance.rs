//! End-to-end acceptance suite, run without the libtest harness so that the
//! PASS/FAIL line of every criterion is always printed. Exits non-zero if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use dltl::format::load_kripke;
use dltl_core::awa::{build_awa, AwaState, BuildOptions, Cmp};
use dltl_core::gen::{random_instance, Instance, Limits};
use dltl_core::nba::{nba_membership, Nba};
use dltl_core::rational::{rat, Rational};
use dltl_core::{
    approximate_value, check_at_least, enumerate_lassos, eval_bool_ltl, eval_lasso, extreme_rewrites, parse_formula,
    satisfiable_above, Alphabet, CheckVerdict, Discount, Error, Formula, KripkeStructure,
};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn alphabet_for(inst: &Instance) -> Alphabet {
    if inst.lasso.is_boolean() {
        Alphabet::boolean(inst.lasso.atoms.clone())
    } else {
        Alphabet::from_lasso(&inst.lasso)
    }
}

fn nba(
    f: &Formula,
    cmp: Cmp,
    v: &Rational,
    alphabet: &Alphabet,
    options: BuildOptions,
    prune: bool,
) -> Result<Nba, Error> {
    Nba::new(build_awa(f, cmp, v, alphabet, options)?, prune)
}

fn accepts(f: &Formula, v: &Rational, inst: &Instance, options: BuildOptions) -> Result<bool, Error> {
    let mut n = nba(f, Cmp::Gt, v, &alphabet_for(inst), options, true)?;
    nba_membership(&mut n, &inst.lasso)
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Automaton membership against the exact oracle.
fn diff_1() -> Outcome {
    let start = Instant::now();
    let n = 5000u64;
    let mut mismatches = Vec::new();
    for seed in 0..n {
        let inst = random_instance(seed, &Limits::default());
        let value = eval_lasso(&inst.formula, &inst.lasso).map_err(err)?;
        let got = accepts(&inst.formula, &inst.threshold, &inst, BuildOptions::default()).map_err(err)?;
        if got != (value > inst.threshold) {
            mismatches.push(seed);
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    if !mismatches.is_empty() {
        return Err(format!(
            "{} mismatches, first seeds {:?}",
            mismatches.len(),
            &mismatches[..mismatches.len().min(5)]
        ));
    }
    Ok(format!("{n} instances, 0 mismatches, {:.2?}", start.elapsed()))
}

/// Value above 0 and below 1 against the Boolean rewrites.
fn diff_2() -> Outcome {
    let mut count = 0;
    for (weighted, seeds) in [(false, 100_000..101_500u64), (true, 101_500..102_500)] {
        let limits = Limits { weighted, ..Limits::default() };
        for seed in seeds {
            let inst = random_instance(seed, &limits);
            let value = eval_lasso(&inst.formula, &inst.lasso).map_err(err)?;
            let (pos, notone) = extreme_rewrites(&inst.formula);
            if eval_bool_ltl(&pos, &inst.lasso).map_err(err)? != (value > Rational::zero()) {
                return Err(format!("seed {seed}: pos mismatch on {}", inst.formula));
            }
            if eval_bool_ltl(&notone, &inst.lasso).map_err(err)? != (value < Rational::one()) {
                return Err(format!("seed {seed}: notone mismatch on {}", inst.formula));
            }
            count += 1;
        }
    }
    Ok(format!("{count} instances, 0 mismatches"))
}

/// Pruned and unpruned Büchi automata.
fn diff_3() -> Outcome {
    let n = 1000u64;
    let (mut pruned_total, mut full_total) = (0, 0);
    for seed in 200_000..200_000 + n {
        let inst = random_instance(seed, &Limits::default());
        let alphabet = alphabet_for(&inst);
        let mut pruned =
            nba(&inst.formula, Cmp::Gt, &inst.threshold, &alphabet, BuildOptions::default(), true).map_err(err)?;
        let mut full =
            nba(&inst.formula, Cmp::Gt, &inst.threshold, &alphabet, BuildOptions::default(), false).map_err(err)?;
        if nba_membership(&mut pruned, &inst.lasso).map_err(err)?
            != nba_membership(&mut full, &inst.lasso).map_err(err)?
        {
            return Err(format!("seed {seed}: membership differs"));
        }
        pruned.materialize();
        full.materialize();
        if pruned.len() > full.len() {
            return Err(format!("seed {seed}: pruned {} > unpruned {}", pruned.len(), full.len()));
        }
        pruned_total += pruned.len();
        full_total += full.len();
    }
    Ok(format!("{n} instances, 0 mismatches, states {pruned_total} pruned vs {full_total} unpruned"))
}

/// Threshold chain length of `F{exp(1/2)} p` at `2^-k`.
fn size_1() -> Outcome {
    let start = Instant::now();
    let f = parse_formula("F{exp(1/2)} p").map_err(|e| e.to_string())?;
    let alphabet = Alphabet::boolean(vec!["p".into()]);
    for k in 1..=12u32 {
        let v = Rational::new(1.into(), (1u64 << k).into());
        let awa = build_awa(&f, Cmp::Gt, &v, &alphabet, BuildOptions::default()).map_err(err)?;
        // Independent count: t -> t/λ until the constant case t ≥ 1 fires.
        let mut expected = Vec::new();
        let mut t = v.clone();
        while t < Rational::one() {
            expected.push(t.clone());
            t *= Rational::from_integer(2.into());
        }
        let mut got: Vec<Rational> = awa
            .states()
            .iter()
            .filter_map(|s| match s {
                AwaState::Assert { threshold, .. } => Some(threshold.clone()),
                AwaState::Bool { .. } => None,
            })
            .collect();
        got.sort();
        if awa.type1_count() != k as usize || got != expected {
            return Err(format!("k = {k}: {} states, thresholds {got:?}", awa.type1_count()));
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("chain length k for k = 1..12, {:.2?}", start.elapsed()))
}

fn min_over_lassos(k: &KripkeStructure, f: &Formula) -> Result<Rational, String> {
    let mut min = Rational::one();
    for l in enumerate_lassos(k, 4, 4) {
        min = min.min(eval_lasso(f, &l).map_err(err)?);
    }
    Ok(min)
}

/// Model checking the fixtures, with witnesses counted for WIT-1.
fn mc_1(witnesses: &mut usize) -> Outcome {
    let start = Instant::now();
    let two_branch = load_kripke(&fixture("two_branch.kripke")).map_err(|e| e.to_string())?;
    let chain = load_kripke(&fixture("chain.kripke")).map_err(|e| e.to_string())?;
    let f = parse_formula("F{exp(1/2)} b").map_err(|e| e.to_string())?;
    let min = min_over_lassos(&two_branch, &f)?;
    for num in 1..=16 {
        let v = rat(num, 16);
        if min >= v {
            return Err(format!("enumeration finds no computation below {v}"));
        }
        match check_at_least(&two_branch, &f, &v).map_err(err)? {
            CheckVerdict::Holds => return Err(format!("HOLDS at {v}")),
            CheckVerdict::Violated { counterexample, value } => {
                let exact = eval_lasso(&f, &counterexample).map_err(err)?;
                if exact != value || exact >= v || !two_branch.realizes(&counterexample) {
                    return Err(format!("bad counterexample {counterexample} at {v}"));
                }
                *witnesses += 1;
            }
        }
    }
    let eps = rat(1, 32);
    let (lo, hi) = approximate_value(&chain, &f, &eps).map_err(err)?;
    let half = rat(1, 2);
    if !(lo <= half && half <= hi && &hi - &lo <= eps) || min_over_lassos(&chain, &f)? != half {
        return Err(format!("chain bracket [{lo}, {hi}] misses 1/2"));
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("VIOLATED at all 16 grid points, chain in [{lo}, {hi}], {:.2?}", start.elapsed()))
}

const DISCOUNTS: [(i64, i64); 3] = [(1, 4), (1, 2), (3, 4)];

fn discount(seed: u64) -> Discount {
    match seed % 4 {
        3 => Discount::reciprocal(),
        i => {
            let (n, d) = DISCOUNTS[i as usize];
            Discount::exponential(rat(n, d)).expect("factor in (0,1)")
        }
    }
}

/// Scale linearity and the tending operator at limit 0.
fn ext_1() -> Outcome {
    let n = 1000u64;
    for seed in 300_000..300_000 + n {
        let inst = random_instance(seed, &Limits { weighted: seed % 2 == 0, ..Limits::default() });
        let lambda = rat(1 + (seed % 15) as i64, 16);
        let scaled = Formula::scale(lambda.clone(), inst.formula.clone());
        let value = eval_lasso(&inst.formula, &inst.lasso).map_err(err)?;
        if eval_lasso(&scaled, &inst.lasso).map_err(err)? != &lambda * &value {
            return Err(format!("seed {seed}: scale mismatch"));
        }
    }
    for seed in 310_000..310_000 + n {
        let a = random_instance(seed, &Limits { depth: 3, ..Limits::default() });
        let b = random_instance(seed + n, &Limits { depth: 3, ..Limits::default() });
        let d = discount(seed);
        let until = Formula::disc_until(a.formula.clone(), d.clone(), b.formula.clone());
        let tend = Formula::tend(a.formula.clone(), d, Rational::zero(), b.formula);
        if eval_lasso(&until, &a.lasso).map_err(err)? != eval_lasso(&tend, &a.lasso).map_err(err)? {
            return Err(format!("seed {seed}: tend value differs"));
        }
        if accepts(&until, &a.threshold, &a, BuildOptions::default()).map_err(err)?
            != accepts(&tend, &a.threshold, &a, BuildOptions::default()).map_err(err)?
        {
            return Err(format!("seed {seed}: tend membership differs"));
        }
    }
    Ok(format!("{n} scale instances, {n} tend instances, 0 mismatches"))
}

/// Exponential discounting with and without folding shifts into thresholds.
fn ext_2() -> Outcome {
    let n = 1000u64;
    let general = BuildOptions { exponential_fast_path: false };
    for seed in 400_000..400_000 + n {
        let inst = random_instance(seed, &Limits { exponential_only: true, ..Limits::default() });
        let fast = accepts(&inst.formula, &inst.threshold, &inst, BuildOptions::default()).map_err(err)?;
        let slow = accepts(&inst.formula, &inst.threshold, &inst, general).map_err(err)?;
        if fast != slow {
            return Err(format!("seed {seed}: fast {fast}, general {slow}"));
        }
    }
    Ok(format!("{n} instances, 0 mismatches"))
}

/// Satisfiability witnesses and random model-checking counterexamples,
/// re-verified here, plus the CLI on the fixtures.
fn wit_1(mut witnesses: usize) -> Outcome {
    let mut internal = 0;
    let mut record = |r: Result<(), Error>| -> Result<(), String> {
        match r {
            Err(Error::Internal(msg)) => {
                internal += 1;
                Err(msg)
            }
            Err(e) => Err(e.to_string()),
            Ok(()) => Ok(()),
        }
    };
    let alphabet = Alphabet::boolean(vec!["p".into(), "q".into()]);
    for seed in 500_000..500_300u64 {
        let inst = random_instance(seed, &Limits::default());
        let mut found = None;
        record(satisfiable_above(&inst.formula, &inst.threshold, &alphabet).map(|w| found = w))?;
        if let Some((lasso, value)) = found {
            let exact = eval_lasso(&inst.formula, &lasso).map_err(err)?;
            if exact != value || exact <= inst.threshold {
                return Err(format!("seed {seed}: witness {lasso} has value {exact}"));
            }
            witnesses += 1;
        }
    }
    let models = ["two_branch.kripke", "chain.kripke", "single.kripke", "weighted.kripke"];
    for (i, name) in models.iter().enumerate() {
        let k = load_kripke(&fixture(name)).map_err(|e| e.to_string())?;
        for seed in 0..60u64 {
            let limits = Limits { depth: 3, atoms: k.atoms.len(), ..Limits::default() };
            let mut f = random_instance(600_000 + 100 * i as u64 + seed, &limits).formula;
            f = rename(&f, &k.atoms);
            let v = random_instance(seed, &limits).threshold;
            let mut verdict = None;
            record(check_at_least(&k, &f, &v).map(|c| verdict = Some(c)))?;
            if let Some(CheckVerdict::Violated { counterexample, value }) = verdict {
                let exact = eval_lasso(&f, &counterexample).map_err(err)?;
                if exact != value || exact >= v || !k.realizes(&counterexample) {
                    return Err(format!("{name}: counterexample {counterexample} invalid for {f} at {v}"));
                }
                witnesses += 1;
            }
        }
    }
    let cli = cli_runs()?;
    if internal > 0 {
        return Err(format!("{internal} internal errors"));
    }
    Ok(format!("{witnesses} witnesses verified, {cli} CLI runs, 0 exit-code-3 results"))
}

/// Generator atoms `p, q, ...` mapped onto the model's atoms.
fn rename(f: &Formula, atoms: &[String]) -> Formula {
    let r = |g: &Formula| Box::new(rename(g, atoms));
    match f {
        Formula::Atom(a) => {
            let i = dltl_core::gen::atom_names(atoms.len()).iter().position(|g| g == a).expect("generated atom");
            Formula::Atom(atoms[i].clone())
        }
        Formula::True | Formula::False => f.clone(),
        Formula::Not(a) => Formula::Not(r(a)),
        Formula::Next(a) => Formula::Next(r(a)),
        Formula::Or(a, b) => Formula::Or(r(a), r(b)),
        Formula::And(a, b) => Formula::And(r(a), r(b)),
        Formula::Until(a, b) => Formula::Until(r(a), r(b)),
        Formula::DiscUntil(a, d, b) => Formula::DiscUntil(r(a), d.clone(), r(b)),
        Formula::Scale(l, a) => Formula::Scale(l.clone(), r(a)),
        Formula::Tend(a, d, z, b) => Formula::Tend(r(a), d.clone(), z.clone(), r(b)),
    }
}

fn cli_runs() -> Result<usize, String> {
    let bin = env!("CARGO_BIN_EXE_dltl");
    let runs: [(&[&str], i32); 6] = [
        (&["check", &fixture("single.kripke"), "p", "1"], 0),
        (&["check", &fixture("two_branch.kripke"), &format!("@{}", fixture("eventually_b.dltl")), "1/2"], 1),
        (&["eval", "a=1 a=1 a=1 ; a=0", "a U{exp(1/2)} !a"], 0),
        (&["sat", "F{exp(1/2)} p & G !q", "1/4", "--atoms", "p,q"], 0),
        (&["value", &fixture("chain.kripke"), "F{exp(1/2)} b", "1/32"], 0),
        (&["translate", "p U{recip} q", "1/3", "--nba", "--graph"], 0),
    ];
    for (args, expected) in runs.iter() {
        let out = Command::new(bin).args(*args).output().map_err(|e| e.to_string())?;
        let code = out.status.code().unwrap_or(-1);
        if code != *expected {
            return Err(format!("dltl {args:?} exited {code}: {}", String::from_utf8_lossy(&out.stderr)));
        }
        let stdout = String::from_utf8_lossy(&out.stdout);
        if let Some(lasso) = stdout.lines().find_map(|l| l.strip_prefix("counterexample: ")) {
            let value = stdout.lines().find_map(|l| l.strip_prefix("value: ")).ok_or("missing value line")?;
            let again = Command::new(bin).args(["eval", lasso, "F{exp(1/2)} b"]).output().map_err(|e| e.to_string())?;
            if String::from_utf8_lossy(&again.stdout).trim() != value {
                return Err(format!("printed counterexample does not reproduce value {value}"));
            }
        }
    }
    Ok(runs.len())
}

fn main() {
    let mut witnesses = 0;
    let results: Vec<(&str, Outcome)> = vec![
        ("DIFF-1", diff_1()),
        ("DIFF-2", diff_2()),
        ("DIFF-3", diff_3()),
        ("SIZE-1", size_1()),
        ("MC-1", mc_1(&mut witnesses)),
        ("EXT-1", ext_1()),
        ("EXT-2", ext_2()),
    ];
    let wit = ("WIT-1", wit_1(witnesses));
    let mut failed = Vec::new();
    for (name, outcome) in results.iter().chain(std::iter::once(&wit)) {
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(*name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
