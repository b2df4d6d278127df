//! Acceptance criteria 1-10. Runs without the libtest harness so every
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

use std::time::{Duration, Instant};

use geodstab::catalog::{lefschetz_holds, validate, Catalog};
use geodstab_core::branching::{decompose, EmbeddingData, ReductiveDatum, ReductiveWeight};
use geodstab_core::lagrangian::{
    index_lower_bound, lagrangian_verdict, Comparison, LagrangianInputs, LagrangianVerdict, RicciSign,
};
use geodstab_core::rational::qi;
use geodstab_core::reps::{casimir, dimension, weight_system};
use geodstab_core::stability::{
    analyze, casimir_verdict_scaled, equal_rank_check, Congruence, invariant_section_check, DEFAULT_CANDIDATE_LIMIT,
};
use geodstab_core::{Family, RootDatum, Verdict, Weight, Q};
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

type Criterion<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

const FAMILIES: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

fn data(f: Family, n: usize) -> RootDatum {
    RootDatum::new(f, n).unwrap()
}

fn all_types(max_rank: usize) -> Vec<RootDatum> {
    FAMILIES
        .iter()
        .flat_map(|&f| (1..=max_rank).filter(move |&n| f.is_valid_rank(n)).map(move |n| data(f, n)))
        .collect()
}

fn fundamental(d: &RootDatum, i: usize) -> Weight {
    Weight::fundamental(d.rank(), i)
}

fn c(d: &RootDatum, w: &Weight) -> Q {
    casimir(d, w, Q::one()).unwrap().0
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Closed forms for the dual Coxeter number.
fn dual_coxeter_table(f: Family, n: i64) -> i64 {
    match (f, n) {
        (Family::A, n) => n + 1,
        (Family::B, n) => 2 * n - 1,
        (Family::C, n) => n + 1,
        (Family::D, n) => 2 * n - 2,
        (Family::E, 6) => 12,
        (Family::E, 7) => 18,
        (Family::E, 8) => 30,
        (Family::F, 4) => 9,
        (Family::G, 2) => 4,
        _ => unreachable!(),
    }
}

/// `1 + <rho, theta^vee>`: one plus the sum of the comarks, read off the
/// highest root expanded in simple roots.
fn dual_coxeter_from_comarks(d: &RootDatum) -> Q {
    let theta = d.highest_root();
    let theta_sq = d.root_length_sq(theta);
    let mut h = Q::one();
    for (i, &a) in theta.iter().enumerate() {
        let mut e = vec![0; d.rank()];
        e[i] = 1;
        h += qi(a) * d.root_length_sq(&e) / theta_sq;
    }
    h
}

fn criterion_1() -> Outcome {
    let types = all_types(8);
    for d in &types {
        let n = d.rank() as i64;
        let table = dual_coxeter_table(d.family(), n);
        check(dual_coxeter_from_comarks(d) == qi(table), || format!("{}: comark sum disagrees with table", d.name()))?;
        let got = c(d, &d.adjoint_weight());
        check(got == qi(2 * table), || format!("{}: c(adjoint) = {got}, want {}", d.name(), 2 * table))?;
    }
    Ok(format!("{} algebras, c(adjoint) = 2h", types.len()))
}

fn criterion_2() -> Outcome {
    let g2 = data(Family::G, 2);
    let (c1, c2) = (c(&g2, &fundamental(&g2, 0)), c(&g2, &fundamental(&g2, 1)));
    check(c1 == qi(4) && c2 == qi(8) && c1 < c2, || format!("c(w1) = {c1}, c(w2) = {c2}"))?;
    Ok("c(w1) = 4 < c(w2) = 8".into())
}

fn criterion_3() -> Outcome {
    for n in 2..=4usize {
        let b = data(Family::B, n);
        let w1 = fundamental(&b, 0);
        // second exterior power of the vector module: labels (0,1,0..) for n >= 3, (0,2) for n = 2
        let wedge2 = if n == 2 { Weight(vec![0, 2]) } else { fundamental(&b, 1) };
        let (x, y, z) = (c(&b, &w1), c(&b, &wedge2), c(&b, &w1.scaled(2)));
        let k = n as i64;
        check(x == qi(2 * k) && y == qi(4 * k - 2) && z == qi(4 * k + 2) && x < y && y < z, || {
            format!("B{n}: {x}, {y}, {z}")
        })?;
    }
    Ok("B2, B3, B4: 2n < 4n-2 < 4n+2".into())
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for d in all_types(4) {
        for i in 0..d.rank() {
            let w = fundamental(&d, i);
            let total = weight_system(&d, &w).unwrap().total_multiplicity();
            let dim = dimension(&d, &w).unwrap();
            check(total == dim, || format!("{} w{}: multiplicities {total}, dimension {dim}", d.name(), i + 1))?;
            count += 1;
        }
    }
    Ok(format!("{count} fundamental modules"))
}

/// Dominant labels of one simple factor with dimension at most `cap`.
fn factor_modules(d: &RootDatum, cap: u64) -> Vec<(Weight, u64)> {
    fn grow(d: &RootDatum, cap: u64, i: usize, w: &mut Vec<i64>, out: &mut Vec<(Weight, u64)>) {
        if i == w.len() {
            out.push((Weight(w.clone()), dimension(d, &Weight(w.clone())).unwrap()));
            return;
        }
        loop {
            // dimension is increasing in every label, so the first overshoot ends this axis
            let probe = Weight(w.iter().enumerate().map(|(j, &l)| if j > i { 0 } else { l }).collect());
            if dimension(d, &probe).unwrap() > cap {
                break;
            }
            grow(d, cap, i + 1, w, out);
            w[i] += 1;
        }
        for x in w.iter_mut().skip(i) {
            *x = 0;
        }
    }
    let mut out = Vec::new();
    grow(d, cap, 0, &mut vec![0; d.rank()], &mut out);
    out
}

/// Every module of the acting group with dimension at most `cap`: source
/// weights passing the embedding's congruences, with charges drawn from
/// `{-1, 0, 1}` times the lattice step of each circle.
fn source_modules(e: &EmbeddingData, congruences: &[Congruence], cap: u64) -> Vec<ReductiveWeight> {
    let src: &ReductiveDatum = &e.source;
    let mut acc: Vec<(Vec<Weight>, u64)> = vec![(vec![], 1)];
    for d in &src.factors {
        let options = factor_modules(d, cap);
        let mut next = Vec::new();
        for (labels, dim) in &acc {
            for (w, k) in &options {
                if dim * k <= cap {
                    let mut l = labels.clone();
                    l.push(w.clone());
                    next.push((l, dim * k));
                }
            }
        }
        acc = next;
    }
    let mut charges: Vec<Vec<Q>> = vec![vec![]];
    for step in &e.charge_steps {
        charges = charges
            .into_iter()
            .flat_map(|q| {
                (-1..=1).map(move |k| {
                    let mut q = q.clone();
                    q.push(qi(k) * step);
                    q
                })
            })
            .collect();
    }
    acc.into_iter()
        .flat_map(|(labels, _)| {
            charges.iter().map(move |q| ReductiveWeight { labels: labels.clone(), charges: q.clone() })
        })
        .filter(|w| congruences.iter().all(|c| c.accepts(&w.coords())))
        .collect()
}

fn conserved(e: &EmbeddingData, lambda: &ReductiveWeight) -> Result<(), String> {
    let parts = decompose(e, lambda).map_err(|err| format!("{lambda}: {err}"))?;
    let total: u64 = parts.iter().map(|(w, m)| m * e.target.dimension_of(w).unwrap()).sum();
    let dim = e.source.dimension_of(lambda).unwrap();
    check(total == dim, || format!("{lambda}: components sum to {total}, dimension {dim}"))
}

fn criterion_5(cat: &Catalog) -> Outcome {
    let mut names: Vec<&str> = cat
        .entries()
        .iter()
        .filter(|e| e.machine_checked)
        .filter_map(|e| e.kn_embedding.as_deref())
        .collect();
    names.sort_unstable();
    names.dedup();
    let threads = std::thread::available_parallelism().map_or(4, usize::from);
    let mut total = 0;
    for name in &names {
        let e = cat.embedding(name).unwrap();
        let started = Instant::now();
        let modules = source_modules(e, cat.embedding_congruences(name).unwrap(), 2000);
        total += modules.len();
        let chunk = modules.len().div_ceil(threads).max(1);
        std::thread::scope(|s| {
            let handles: Vec<_> = modules
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().try_for_each(|m| conserved(e, m))))
                .collect();
            handles.into_iter().try_for_each(|h| h.join().unwrap())
        })
        .map_err(|m| format!("{name}: {m}"))?;
        if std::env::var_os("ACCEPTANCE_TRACE").is_some() {
            eprintln!("  {name}: {} modules, {:.2?}", modules.len(), started.elapsed());
        }
    }
    Ok(format!("{} embeddings, {total} modules of dimension <= 2000", names.len()))
}

const EXPECTED_VERDICTS: &[(&str, Verdict)] = &[
    ("sphere-equator-S2-in-S3", Verdict::Unstable),
    ("sphere-equator-S3-in-S4", Verdict::Unstable),
    ("sphere-equator-S4-in-S5", Verdict::Unstable),
    ("projective-RP2-in-RP3", Verdict::Stable),
    ("projective-RP3-in-RP4", Verdict::Stable),
    ("projective-RP4-in-RP5", Verdict::Stable),
    ("grassmann-GR2-1-in-SO3", Verdict::Stable),
    ("grassmann-GR2-3-in-SO5", Verdict::Stable),
    ("grassmann-GR4-1-in-SO5", Verdict::Stable),
    ("grassmann-GR2-5-in-SO7", Verdict::Stable),
    ("grassmann-GR4-3-in-SO7", Verdict::Stable),
    ("grassmann-GR6-1-in-SO7", Verdict::Stable),
    ("grassmann-GC1-2-in-SU3", Verdict::Unstable),
    ("grassmann-GC1-3-in-SU4", Verdict::Unstable),
    ("grassmann-GC2-2-in-SU4", Verdict::Stable),
    ("g2-polar", Verdict::Unstable),
    ("gi-s2s2-plus", Verdict::Unstable),
    ("gi-s2s2-minus", Verdict::Unstable),
    ("ci1-so2xai1", Verdict::Unstable),
    ("ci2-so2xai2", Verdict::Unstable),
    ("ci3-so2xai3", Verdict::Unstable),
    ("lagrangian-GR1-1-in-GC1-1", Verdict::Unstable),
    ("lagrangian-GR1-2-in-GC1-2", Verdict::Unstable),
    ("lagrangian-GR1-3-in-GC1-3", Verdict::Unstable),
    ("lagrangian-GR2-2-in-GC2-2", Verdict::Unstable),
    ("lagrangian-GR1-4-in-GC1-4", Verdict::Unstable),
    ("lagrangian-GR2-3-in-GC2-3", Verdict::Unstable),
];

fn criterion_6(cat: &Catalog) -> Outcome {
    let report = validate(cat);
    if let Some(f) = report.failures().next() {
        return Err(format!("{} [{}]: {}", f.subject, f.check, f.detail));
    }
    for &(name, want) in EXPECTED_VERDICTS {
        let entry = cat.entry(name).ok_or_else(|| format!("{name} missing"))?;
        check(entry.machine_checked, || format!("{name} is not machine-checked"))?;
        check(Verdict::from(entry.expected_verdict) == want, || format!("{name}: catalog expects {}", Verdict::from(entry.expected_verdict)))?;
        let verdict_line = report
            .checks
            .iter()
            .find(|l| l.subject == name && l.check == "verdict")
            .ok_or_else(|| format!("{name}: no verdict check"))?;
        check(verdict_line.passed, || format!("{name}: {}", verdict_line.detail))?;
        let got = analyze(cat.spec(name).unwrap()).map_err(|e| e.to_string())?.verdict;
        check(got == want, || format!("{name}: computed {got}, expected {want}"))?;
    }
    Ok(format!("{} checks, {} named verdicts agree", report.checks.len(), EXPECTED_VERDICTS.len()))
}

fn criterion_7(cat: &Catalog) -> Outcome {
    for n in 3..=5u64 {
        let name = format!("sphere-equator-S{}-in-S{n}", n - 1);
        let r = analyze(cat.spec(&name).ok_or_else(|| format!("{name} missing"))?).map_err(|e| e.to_string())?;
        let got = (r.index, r.nullity, r.killing_nullity);
        check(got == (1, n, n), || format!("{name}: {got:?}"))?;
    }
    Ok("(1, n, n) for n = 3, 4, 5".into())
}

fn criterion_8(cat: &Catalog) -> Outcome {
    let specs: Vec<_> = cat.specs().collect();
    let (mut invariant, mut equal_rank) = (0, 0);
    for spec in &specs {
        let r = analyze(spec).map_err(|e| format!("{}: {e}", spec.name))?;
        if invariant_section_check(spec).is_some() {
            invariant += 1;
            check(r.verdict == Verdict::Unstable, || format!("{}: invariant section but stable", spec.name))?;
        }
        if equal_rank_check(spec).is_some() {
            equal_rank += 1;
            check(r.verdict == Verdict::Stable, || format!("{}: equal rank but unstable", spec.name))?;
        }
        check((r.verdict == Verdict::Unstable) == (r.index > 0), || format!("{}: verdict/index mismatch", spec.name))?;
    }
    check(invariant > 0 && equal_rank > 0, || "a shortcut never fired".into())?;

    // Rescaled thresholds keep the verdict tied to the index.
    let mut runner = TestRunner::new(Config { cases: 64, ..Config::default() });
    let n = specs.len();
    runner
        .run(&(0..n, 1i64..=12), |(i, k)| {
            let r = casimir_verdict_scaled(specs[i], Q::new(k as i128, 4), DEFAULT_CANDIDATE_LIMIT).unwrap();
            prop_assert_eq!(r.verdict == Verdict::Unstable, r.index > 0);
            prop_assert_eq!(r.destabilizers.is_empty(), r.index == 0);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{n} entries; invariant-section fired {invariant}x, equal-rank {equal_rank}x; 64 rescaled cases"))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_9(cat: &Catalog) -> Outcome {
    let report = validate(cat);
    for n in 1..=4u32 {
        let name = format!("SO({})", 2 * n + 1);
        let g = cat
            .file
            .groupings
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| format!("{name} grouping missing"))?;
        let want: Vec<u64> = (1..=n as u64).map(|k| binomial(n as u64, k)).collect();
        let mut got = g.euler_plus.clone();
        got.sort_unstable();
        let mut sorted = want.clone();
        sorted.sort_unstable();
        check(got == sorted, || format!("{name}: {:?}, want {want:?}", g.euler_plus))?;
        check(g.rank == n && lefschetz_holds(g.rank, &g.euler_plus), || format!("{name}: 2^{n} != 1 + sum"))?;
        let line = report
            .checks
            .iter()
            .find(|l| l.subject == name && l.check == "lefschetz")
            .ok_or_else(|| format!("{name}: not validated"))?;
        check(line.passed, || line.detail.clone())?;
    }
    Ok("SO(3), SO(5), SO(7), SO(9)".into())
}

fn criterion_10() -> Outcome {
    let rows = [
        (
            LagrangianInputs { ricci: RicciSign::Positive, betti1: 1, ..Default::default() },
            LagrangianVerdict::Unstable,
        ),
        (
            LagrangianInputs { comparison: Comparison::Gt2Rn, has_killing_field: true, ..Default::default() },
            LagrangianVerdict::Unstable,
        ),
        (LagrangianInputs { ricci: RicciSign::Nonpositive, ..Default::default() }, LagrangianVerdict::Stable),
        (LagrangianInputs { comparison: Comparison::LeRn, ..Default::default() }, LagrangianVerdict::Stable),
        (
            LagrangianInputs {
                comparison: Comparison::Le2Rn,
                identity_map_stable: Some(true),
                ..Default::default()
            },
            LagrangianVerdict::Stable,
        ),
        (
            LagrangianInputs {
                comparison: Comparison::Le2Rn,
                identity_map_stable: Some(false),
                ..Default::default()
            },
            LagrangianVerdict::Undecided,
        ),
        (LagrangianInputs { ricci: RicciSign::Positive, betti1: 0, ..Default::default() }, LagrangianVerdict::Undecided),
    ];
    for (inputs, want) in &rows {
        let got = lagrangian_verdict(inputs).map_err(|e| e.to_string())?.verdict;
        check(got == *want, || format!("{inputs:?}: {got:?}, want {want:?}"))?;
    }
    let both = LagrangianInputs { ricci: RicciSign::Positive, betti1: 2, comparison: Comparison::LeRn, ..Default::default() };
    check(lagrangian_verdict(&both).is_err(), || "contradictory inputs accepted".into())?;
    for b in 0..10 {
        check(index_lower_bound(b) == b, || format!("bound({b})"))?;
    }
    Ok(format!("{} rows, bound = b1", rows.len()))
}

fn main() {
    let cat = Catalog::bundled();
    let criteria: Vec<Criterion<'_>> = vec![
        (1, "adjoint Casimir is twice the dual Coxeter number", Duration::from_secs(1), Box::new(criterion_1)),
        (2, "G2 fundamental Casimirs", Duration::from_secs(1), Box::new(criterion_2)),
        (3, "B_n Casimir chain", Duration::from_secs(1), Box::new(criterion_3)),
        (4, "multiplicities sum to dimension", Duration::from_secs(30), Box::new(criterion_4)),
        (5, "branching conserves dimension", Duration::from_secs(60), Box::new(|| criterion_5(&cat))),
        (6, "catalog verdicts", Duration::from_secs(120), Box::new(|| criterion_6(&cat))),
        (7, "equator index, nullity, Killing nullity", Duration::from_secs(5), Box::new(|| criterion_7(&cat))),
        (8, "shortcuts agree with the engine", Duration::from_secs(120), Box::new(|| criterion_8(&cat))),
        (9, "Lefschetz identity for SO(2n+1)", Duration::from_secs(1), Box::new(|| criterion_9(&cat))),
        (10, "Lagrangian rules", Duration::from_secs(1), Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (n, title, limit, f) in &criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(m) if took > *limit => Err(format!("{m}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(m) => println!("criterion {n:>2} PASS  {title}: {m} ({took:.2?})"),
            Err(m) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {m} ({took:.2?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
