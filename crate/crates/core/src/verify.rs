//! Randomized property suite over the whole pipeline.
//!
//! Samples are drawn sequentially from a seeded ChaCha generator, checked in
//! parallel, and reported in a fixed order, so a given seed always yields
//! the same report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{chamber_witness, full_arrangement_witnesses, reduced_chamber_poset};
use crate::foundation::Rational;
use crate::homology::{betti1_euler, closed_form_betti1, connected_components, cycle_space, is_cycle};
use crate::model::{build_full_model, build_reduced_model, filter_at, normalize_lengths, subgraph_monotonicity_check, EdgeLengthVector, ModelVertex};
use crate::oracle::oracle_check;
use crate::persistence::{
    build_representation, chamber_graph, decompose_by_splitting, interval_decomposition, summand_multiset,
    verify_decomposition, IntervalSummand,
};
use crate::spanning::{
    all_spanning_trees, biased_spanning_tree, extend_biased_tree, model_weights, SPANNING_TREE_GUARD,
};

/// A random positive rational with numerator in `1..=48` and denominator
/// in `1..=6`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.random_range(1..=48);
    let d = rng.random_range(1..=6);
    Rational::new(n, d).expect("nonzero denominator")
}

/// `k - 1` random tail lengths, pairwise distinct when asked.
pub fn random_tail<R: Rng>(rng: &mut R, k: usize, distinct: bool) -> Vec<Rational> {
    loop {
        let tail: Vec<Rational> = (1..k).map(|_| random_rational(rng)).collect();
        let mut sorted = tail.clone();
        sorted.sort();
        sorted.dedup();
        if !distinct || sorted.len() == tail.len() {
            return tail;
        }
    }
}

/// Random tail with `L = 10 * max(tail)`.
pub fn random_lengths<R: Rng>(rng: &mut R, k: usize, distinct: bool) -> EdgeLengthVector {
    let tail = random_tail(rng, k, distinct);
    let max = tail.iter().max().expect("k >= 3").clone();
    let mut raw = vec![max * Rational::from_integer(10)];
    raw.extend(tail);
    normalize_lengths(&raw).expect("random lengths are positive")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub k_min: usize,
    pub k_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub with_oracle: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            k_min: 3,
            k_max: 6,
            trials: 10,
            seed: 0,
            with_oracle: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub k: usize,
    pub trial: usize,
    pub lengths: Vec<String>,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Euler rank matches the closed form wherever one applies.
pub fn check_rank_formulas(lengths: &EdgeLengthVector) -> Check {
    for c in reduced_chamber_poset(lengths).chambers() {
        if let Some(expected) = closed_form_betti1(c, lengths) {
            let got = betti1_euler(&chamber_graph(lengths, c));
            ensure(got == expected, || {
                format!("{} {}: rank {got}, closed form {expected}", c.band_label(), c.side)
            })?;
        }
    }
    Ok(())
}

/// Ranks over the full-arrangement refinement agree with the rank of the
/// reduced chamber containing each point.
pub fn check_reduction(lengths: &EdgeLengthVector) -> Check {
    let poset = reduced_chamber_poset(lengths);
    let ranks: Vec<usize> = poset
        .chambers()
        .iter()
        .map(|c| betti1_euler(&chamber_graph(lengths, c)))
        .collect();
    for (r, l) in full_arrangement_witnesses(lengths) {
        let c = poset.chamber_of(&r, &l).ok_or_else(|| format!("({r}, {l}) is in no chamber"))?;
        let full = betti1_euler(&filter_at(&build_full_model(&lengths.with_first(l.clone())), &r));
        ensure(full == ranks[c], || {
            format!("({r}, {l}): full model rank {full}, chamber rank {}", ranks[c])
        })?;
    }
    Ok(())
}

/// The computed decomposition passes every verification check, and the
/// splitting route agrees with it.
pub fn check_decomposition(lengths: &EdgeLengthVector) -> Check {
    let rep = build_representation(lengths).map_err(|e| e.to_string())?;
    let summands = interval_decomposition(&rep).map_err(|e| e.to_string())?;
    let report = verify_decomposition(&rep, &summands);
    ensure(report.passed(), || report.failures.join("; "))?;
    let split = decompose_by_splitting(&rep).map_err(|e| e.to_string())?;
    ensure(summand_multiset(&split) == summand_multiset(&summands), || {
        format!("splitting gave {:?}", summand_multiset(&split))
    })
}

/// Fundamental-cycle counts and even degrees on every chamber graph, for
/// both the reduced and the full model.
pub fn check_cycles(lengths: &EdgeLengthVector) -> Check {
    for c in reduced_chamber_poset(lengths).chambers() {
        let (r, l) = chamber_witness(c, lengths);
        let at = lengths.with_first(l);
        for g in [
            filter_at(&build_reduced_model(&at), &r),
            filter_at(&build_full_model(&at), &r),
        ] {
            let space = cycle_space(&g);
            let (comps, _) = connected_components(&g);
            ensure(space.dim() + g.vertex_count() == g.edge_count() + comps, || {
                format!("{} {}: {} cycles for E={} V={} C={comps}", c.band_label(), c.side, space.dim(), g.edge_count(), g.vertex_count())
            })?;
            ensure(space.basis().iter().all(|v| is_cycle(&g, v)), || {
                format!("{} {}: odd vertex degree in a cycle", c.band_label(), c.side)
            })?;
        }
    }
    Ok(())
}

/// Superlevel graphs at comparable parameters are nested with weights not
/// decreasing.
pub fn check_monotonicity<R: Rng>(lengths: &EdgeLengthVector, rng: &mut R, pairs: usize) -> Check {
    for _ in 0..pairs {
        let (r1, r2) = (random_rational(rng), random_rational(rng));
        let (l1, l2) = (random_rational(rng), random_rational(rng));
        let (r_small, r_large) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let (l_small, l_large) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let small = filter_at(&build_full_model(&lengths.with_first(l_small.clone())), &r_large);
        let large = filter_at(&build_full_model(&lengths.with_first(l_large.clone())), &r_small);
        let ok = subgraph_monotonicity_check(&small, &large).map_err(|e| e.to_string())?;
        ensure(ok, || {
            format!("(r={r_large}, L={l_small}) does not embed in (r={r_small}, L={l_large})")
        })?;
    }
    Ok(())
}

/// Rescaling every length rescales the bounds and keeps multiplicities.
pub fn check_scale_invariance(lengths: &EdgeLengthVector, factor: &Rational) -> Check {
    let decompose = |l: &EdgeLengthVector| -> Result<Vec<IntervalSummand>, String> {
        let rep = build_representation(l).map_err(|e| e.to_string())?;
        interval_decomposition(&rep).map_err(|e| e.to_string())
    };
    let scaled_lengths = lengths.scaled(factor).map_err(|e| e.to_string())?;
    let expected: Vec<_> = summand_multiset(&decompose(lengths)?)
        .into_iter()
        .map(|(region, m)| (region.scaled(factor), m))
        .collect();
    let got = summand_multiset(&decompose(&scaled_lengths)?);
    ensure(got == expected, || format!("scaled by {factor}: {got:?} vs {expected:?}"))
}

/// Greedy trees are optimal on the reduced model, and attaching the two
/// lightest vertices to an optimal tree of the rest stays optimal.
pub fn check_biased_trees(lengths: &EdgeLengthVector) -> Check {
    let g = build_reduced_model(lengths);
    if g.edge_count() > SPANNING_TREE_GUARD {
        return Ok(());
    }
    let w = model_weights(&g);
    let mut optimum: Option<Rational> = None;
    for t in all_spanning_trees(&g).map_err(|e| e.to_string())? {
        let p = t.total_priority(&g, &w).map_err(|e| e.to_string())?;
        if optimum.as_ref().is_none_or(|b| p > *b) {
            optimum = Some(p);
        }
    }
    let optimum = optimum.ok_or_else(|| "graph has no spanning tree".to_string())?;
    let greedy = biased_spanning_tree(&g, &w)
        .and_then(|t| t.total_priority(&g, &w))
        .map_err(|e| e.to_string())?;
    ensure(greedy == optimum, || format!("greedy {greedy}, optimum {optimum}"))?;

    // take out the two lightest vertices and attach them again one by one;
    // for k = 3 what remains is disconnected
    let k = lengths.k();
    if k < 4 {
        return Ok(());
    }
    let (va, vb) = (ModelVertex::new(0, k), ModelVertex::new(k, 0));
    let t = biased_spanning_tree(&g.without_vertices(&[va, vb]), &w).map_err(|e| e.to_string())?;
    let t = extend_biased_tree(&t, &g.without_vertices(&[vb]), va, &w).map_err(|e| e.to_string())?;
    let t = extend_biased_tree(&t, &g, vb, &w).map_err(|e| e.to_string())?;
    t.validate(&g).map_err(|e| e.to_string())?;
    let extended = t.total_priority(&g, &w).map_err(|e| e.to_string())?;
    ensure(extended == optimum, || format!("extended {extended}, optimum {optimum}"))
}

/// Oracle homology agrees with the full model off the full arrangement.
pub fn check_oracle(lengths: &EdgeLengthVector) -> Check {
    for cmp in oracle_check(lengths).map_err(|e| e.to_string())? {
        ensure(cmp.agrees(), || {
            format!(
                "(r={}, L={}): complex {:?} (b2={}), model {:?}",
                cmp.r, cmp.l, cmp.oracle, cmp.oracle_b2, cmp.model
            )
        })?;
    }
    Ok(())
}

struct Sample {
    k: usize,
    trial: usize,
    lengths: EdgeLengthVector,
    distinct: EdgeLengthVector,
    factor: Rational,
    seed: u64,
}

fn run_sample(s: &Sample, with_oracle: bool) -> Vec<(String, Check)> {
    let mut out = vec![
        ("rank-formulas".to_string(), check_rank_formulas(&s.lengths)),
        ("decomposition".to_string(), check_decomposition(&s.lengths)),
        ("decomposition-distinct".to_string(), check_decomposition(&s.distinct)),
        ("cycles".to_string(), check_cycles(&s.lengths)),
        (
            "monotonicity".to_string(),
            check_monotonicity(&s.lengths, &mut ChaCha8Rng::seed_from_u64(s.seed), 10),
        ),
        ("scale-invariance".to_string(), check_scale_invariance(&s.lengths, &s.factor)),
    ];
    if s.k <= 6 {
        out.push(("reduction".to_string(), check_reduction(&s.lengths)));
    }
    if s.k <= 5 {
        out.push(("biased-trees".to_string(), check_biased_trees(&s.lengths)));
        if with_oracle {
            out.push(("oracle".to_string(), check_oracle(&s.lengths)));
        }
    }
    out
}

/// Runs every check on `trials` random samples for each `k` in range.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut samples = Vec::new();
    for k in config.k_min..=config.k_max {
        for trial in 0..config.trials {
            samples.push(Sample {
                k,
                trial,
                lengths: random_lengths(&mut rng, k, false),
                distinct: random_lengths(&mut rng, k, true),
                factor: random_rational(&mut rng),
                seed: rng.random(),
            });
        }
    }
    let results: Vec<CheckResult> = samples
        .par_iter()
        .flat_map_iter(|s| {
            let user: Vec<String> = s.lengths.user_order().iter().map(Rational::to_pq).collect();
            run_sample(s, config.with_oracle)
                .into_iter()
                .map(move |(check, result)| CheckResult {
                    check,
                    k: s.k,
                    trial: s.trial,
                    lengths: user.clone(),
                    passed: result.is_ok(),
                    detail: result.err(),
                })
        })
        .collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    SuiteReport {
        config: config.clone(),
        passed: results.len() - failed,
        failed,
        results,
    }
}

/// Runs every check once on fixed lengths. The distinct-tail check reuses
/// the given lengths.
pub fn run_on_lengths(lengths: &EdgeLengthVector, seed: u64, with_oracle: bool) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = lengths.k();
    let sample = Sample {
        k,
        trial: 0,
        lengths: lengths.clone(),
        distinct: lengths.clone(),
        factor: random_rational(&mut rng),
        seed: rng.random(),
    };
    let user: Vec<String> = lengths.user_order().iter().map(Rational::to_pq).collect();
    let results: Vec<CheckResult> = run_sample(&sample, with_oracle)
        .into_iter()
        .filter(|(check, _)| check != "decomposition-distinct")
        .map(|(check, result)| CheckResult {
            check,
            k,
            trial: 0,
            lengths: user.clone(),
            passed: result.is_ok(),
            detail: result.err(),
        })
        .collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    SuiteReport {
        config: SuiteConfig {
            k_min: k,
            k_max: k,
            trials: 1,
            seed,
            with_oracle,
        },
        passed: results.len() - failed,
        failed,
        results,
    }
}
