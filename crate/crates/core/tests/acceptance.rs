// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Reference values come from oracles written here: closed forms for
//! commuting families and 2x2 examples, a brute-force Euclidean minimax
//! center over support subsets, and residuals recomputed from raw matrices.

#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use rand::Rng;
use unitarize_core::random::{random_invertible, random_spd, random_unitary, seeded, SeededRng};
use unitarize_core::{
    congruence, distance, geodesic, midpoint, solve, ActionGroupoidSpec, CircumcenterResult, ComplexMatrix,
    FiniteGroup, FiniteMeasuredGroupoid, Invariance, PointSet, Representation, SolverOptions, SpdPoint,
    UnitaryGroupRep,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(index: usize, name: &str, outcome: &Outcome) {
    println!(
        "criterion {index} [{}] {name}: {}",
        if outcome.pass { "PASS" } else { "FAIL" },
        outcome.detail
    );
}

// ---------------------------------------------------------------- criterion 1

fn geometry_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(1001);
    let (mut semi_worst, mut cong_worst, mut speed_worst) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures = 0;
    let mut triples = 0;
    for dim in 1..=8 {
        for _ in 0..125 {
            triples += 1;
            let a = SpdPoint::new(random_spd(&mut rng, dim, 1e3));
            let b = SpdPoint::new(random_spd(&mut rng, dim, 1e3));
            let x = SpdPoint::new(random_spd(&mut rng, dim, 1e3));
            let dab = distance(&a, &b).unwrap();
            let dxa = distance(&x, &a).unwrap();
            let dxb = distance(&x, &b).unwrap();
            let z = midpoint(&a, &b).unwrap();
            let dzx = distance(&z, &x).unwrap();
            let lhs = dab * dab + 4.0 * dzx * dzx;
            let rhs = 2.0 * dxa * dxa + 2.0 * dxb * dxb;
            let excess = (lhs - rhs) / (1.0 + lhs + rhs);
            semi_worst = semi_worst.max(excess);
            failures += usize::from(excess > 1e-8);

            let g = random_invertible(&mut rng, dim, 1e3);
            let moved = distance(&congruence(&g, &a).unwrap(), &congruence(&g, &b).unwrap()).unwrap();
            let rel = (dab - moved).abs() / (1.0 + dab);
            cong_worst = cong_worst.max(rel);
            failures += usize::from(rel > 1e-8);

            for t in [0.25, 0.5, 0.75] {
                let p = geodesic(&a, &b, t).unwrap();
                let rel = (distance(&a, &p).unwrap() - t * dab).abs() / (1.0 + dab);
                speed_worst = speed_worst.max(rel);
                failures += usize::from(rel > 1e-7);
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: failures == 0 && elapsed < Duration::from_secs(30),
        detail: format!(
            "{triples} triples, semi-parallelogram worst rel excess {semi_worst:.2e}, congruence worst {cong_worst:.2e}, \
             geodesic speed worst {speed_worst:.2e}, {failures} failures, {:.1}s",
            elapsed.as_secs_f64()
        ),
    }
}

// ---------------------------------------------------------------- criterion 2

/// Smallest enclosing Euclidean ball by enumerating affinely independent
/// support sets of size at most `dim + 1`.
fn chebyshev_center(points: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let dim = points[0].len();
    let m = points.len();
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut subset = Vec::new();
    fn recurse(
        start: usize,
        max_size: usize,
        points: &[Vec<f64>],
        subset: &mut Vec<usize>,
        best: &mut Option<(Vec<f64>, f64)>,
    ) {
        if !subset.is_empty() {
            if let Some((c, r2)) = circumball(points, subset) {
                let worse = best.as_ref().is_some_and(|(_, b)| r2 >= *b);
                if !worse {
                    let slack = 1e-12 * (1.0 + r2);
                    if points.iter().all(|p| sq_dist(p, &c) <= r2 + slack) {
                        *best = Some((c, r2));
                    }
                }
            }
        }
        if subset.len() == max_size {
            return;
        }
        for i in start..points.len() {
            subset.push(i);
            recurse(i + 1, max_size, points, subset, best);
            subset.pop();
        }
    }
    recurse(0, (dim + 1).min(m), points, &mut subset, &mut best);
    let (c, r2) = best.expect("some support set encloses everything");
    (c, r2.sqrt())
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Circumcenter of the points within their affine hull, if independent.
fn circumball(points: &[Vec<f64>], idx: &[usize]) -> Option<(Vec<f64>, f64)> {
    let p0 = &points[idx[0]];
    let k = idx.len() - 1;
    if k == 0 {
        return Some((p0.clone(), 0.0));
    }
    let diffs: Vec<Vec<f64>> = idx[1..]
        .iter()
        .map(|&i| points[i].iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // 2 D Dᵀ α = |D_j|²
    let mut a = vec![vec![0.0; k + 1]; k];
    for j in 0..k {
        for l in 0..k {
            a[j][l] = 2.0 * dot(&diffs[j], &diffs[l]);
        }
        a[j][k] = dot(&diffs[j], &diffs[j]);
    }
    let scale = a
        .iter()
        .map(|r| r[..k].iter().fold(0.0f64, |m, x| m.max(x.abs())))
        .fold(0.0, f64::max);
    for col in 0..k {
        let piv = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-10 * scale {
            return None;
        }
        a.swap(col, piv);
        for r in 0..k {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=k {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let alpha: Vec<f64> = (0..k).map(|j| a[j][k] / a[j][j]).collect();
    let center: Vec<f64> = (0..p0.len())
        .map(|d| p0[d] + (0..k).map(|j| alpha[j] * diffs[j][d]).sum::<f64>())
        .collect();
    let r2 = sq_dist(&center, p0);
    Some((center, r2))
}

struct SolveAudit {
    solves: usize,
    lower_above_radius: usize,
    containment_failures: usize,
}

impl SolveAudit {
    fn new() -> Self {
        Self {
            solves: 0,
            lower_above_radius: 0,
            containment_failures: 0,
        }
    }

    /// Recomputes pairwise half-diameter and all distances to the center.
    fn audit(&mut self, points: &[SpdPoint], result: &CircumcenterResult) {
        self.solves += 1;
        let mut half_diam: f64 = 0.0;
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                half_diam = half_diam.max(distance(a, b).unwrap() / 2.0);
            }
        }
        let slack = 1e-12 * (1.0 + result.radius_at_center);
        if result.radius_lower_bound > result.radius_at_center + slack || half_diam > result.radius_at_center + slack {
            self.lower_above_radius += 1;
        }
        if points
            .iter()
            .any(|p| distance(&result.center, p).unwrap() > result.radius_at_center + 1e-9)
        {
            self.containment_failures += 1;
        }
    }
}

fn diag_point(y: &[f64]) -> SpdPoint {
    let d: Vec<f64> = y.iter().map(|v| v.exp()).collect();
    SpdPoint::from_diagonal(&d).unwrap()
}

fn oracle_equivalence(audit: &mut SolveAudit) -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(2002);
    let opts = SolverOptions::new(1e-9);
    let mut failures = 0;
    let mut unsound = 0;
    let mut worst_excess = f64::NEG_INFINITY;
    let families = 200;
    for _ in 0..families {
        let dim = rng.random_range(1..=6);
        let m = rng.random_range(1..=16);
        let ys: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();
        let points: Vec<SpdPoint> = ys.iter().map(|y| diag_point(y)).collect();
        let set = PointSet::enclosing(points.clone()).unwrap();
        let result = solve(&set, &opts).unwrap();
        audit.audit(&points, &result);

        let (c, r) = chebyshev_center(&ys);
        let oracle = diag_point(&c);
        let err = distance(&result.center, &oracle).unwrap();
        worst_excess = worst_excess.max(err - result.center_error_bound);
        failures += usize::from(err > 1e-6 + result.center_error_bound);
        // the certificate itself must hold against the oracle
        let oracle_radius = r / (dim as f64).sqrt();
        if err > result.center_error_bound + 1e-9 || result.radius_lower_bound > oracle_radius + 1e-9 {
            unsound += 1;
        }
    }
    let pairs = 50;
    for _ in 0..pairs {
        let dim = rng.random_range(1..=6);
        let a = SpdPoint::new(random_spd(&mut rng, dim, 50.0));
        let b = SpdPoint::new(random_spd(&mut rng, dim, 50.0));
        let points = vec![a.clone(), b.clone()];
        let result = solve(&PointSet::enclosing(points.clone()).unwrap(), &opts).unwrap();
        audit.audit(&points, &result);
        let err = distance(&result.center, &midpoint(&a, &b).unwrap()).unwrap();
        worst_excess = worst_excess.max(err - result.center_error_bound);
        failures += usize::from(err > 1e-6 + result.center_error_bound);
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: failures == 0 && unsound == 0 && elapsed < Duration::from_secs(60),
        detail: format!(
            "{families} commuting families + {pairs} pairs, {failures} mismatches, {unsound} unsound certificates, \
             worst (error - bound) {worst_excess:.2e}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    }
}

// ---------------------------------------------------------------- criterion 4

fn sign_rep(group: &FiniteGroup) -> UnitaryGroupRep {
    let matrices = (0..group.order())
        .map(|a| {
            let p = group.permutation(a).unwrap();
            let mut seen = vec![false; p.len()];
            let mut transpositions = 0;
            for i in 0..p.len() {
                let mut j = i;
                let mut len = 0usize;
                while !seen[j] {
                    seen[j] = true;
                    j = p[j];
                    len += 1;
                }
                transpositions += len.saturating_sub(1);
            }
            let s = if transpositions % 2 == 0 { 1.0 } else { -1.0 };
            ComplexMatrix::from_real(&[&[s]])
        })
        .collect();
    UnitaryGroupRep::new(group.clone(), matrices).unwrap()
}

enum Block {
    Fixed,
    Letters,
    Regular,
    /// `ℤ/n` acting on `ℤ/d` by translation, `d | n`.
    Quotient(usize),
}

struct Instance {
    spec: ActionGroupoidSpec,
    base: UnitaryGroupRep,
    cond: f64,
}

fn random_instance(rng: &mut SeededRng, k: usize) -> Instance {
    let (group, cyclic) = match k % 8 {
        0 => (FiniteGroup::symmetric(3), None),
        1 => (FiniteGroup::symmetric(4), None),
        2 => (FiniteGroup::cyclic(2), Some(2)),
        3 => (FiniteGroup::cyclic(3), Some(3)),
        4 => (FiniteGroup::cyclic(5), Some(5)),
        5 => (FiniteGroup::cyclic(6), Some(6)),
        6 => (FiniteGroup::cyclic(8), Some(8)),
        _ => (FiniteGroup::cyclic(12), Some(12)),
    };
    let order = group.order();

    // unit space: a union of orbit blocks, at most 32 units
    let mut blocks = Vec::new();
    let mut units = 0;
    let target = rng.random_range(1..=32);
    while units < target {
        let choice = rng.random_range(0..4);
        let (block, size) = match (choice, cyclic) {
            (0, _) => (Block::Fixed, 1),
            (1, None) => (Block::Letters, group.permutation(0).unwrap().len()),
            (1, Some(n)) | (3, Some(n)) => {
                let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
                let d = divisors[rng.random_range(0..divisors.len())];
                (Block::Quotient(d), d)
            }
            _ => (Block::Regular, order),
        };
        if units + size > 32 {
            if units == 0 {
                continue;
            }
            break;
        }
        blocks.push((block, units));
        units += size;
    }
    let mut action = vec![vec![0; units]; order];
    for (block, offset) in &blocks {
        for (a, row) in action.iter_mut().enumerate() {
            match block {
                Block::Fixed => row[*offset] = *offset,
                Block::Letters => {
                    let p = group.permutation(a).unwrap();
                    for (i, &pi) in p.iter().enumerate() {
                        row[offset + i] = offset + pi;
                    }
                }
                Block::Regular => {
                    for b in 0..order {
                        row[offset + b] = offset + group.mul(a, b);
                    }
                }
                Block::Quotient(d) => {
                    for i in 0..*d {
                        row[offset + i] = offset + (a + i) % d;
                    }
                }
            }
        }
    }
    let mut mu: Vec<f64> = (0..units).map(|_| rng.random_range(0.1..1.0)).collect();
    if units > 1 && rng.random_bool(0.2) {
        // a null unit, only safe on a fixed point or a whole null orbit
        if let Some((Block::Fixed, offset)) = blocks.iter().find(|(b, _)| matches!(b, Block::Fixed)) {
            mu[*offset] = 0.0;
        }
    }
    if mu.iter().all(|&w| w == 0.0) {
        mu[0] = 1.0;
    }
    let total: f64 = mu.iter().sum();
    mu.iter_mut().for_each(|w| *w /= total);
    let labels = (0..units).map(|x| format!("x{x}")).collect();
    let spec = ActionGroupoidSpec::new(group.clone(), labels, mu, action).unwrap();

    let dim = rng.random_range(1..=8);
    let base = match cyclic {
        Some(n) if dim >= n && rng.random_bool(0.5) => {
            let reg = UnitaryGroupRep::regular(group.clone());
            if dim == n {
                reg
            } else {
                reg.direct_sum(&UnitaryGroupRep::trivial(group.clone(), dim - n).unwrap())
                    .unwrap()
            }
        }
        Some(n) => (0..dim)
            .map(|_| UnitaryGroupRep::cyclic_character(n, rng.random_range(0..n)))
            .reduce(|a, b| a.direct_sum(&b).unwrap())
            .unwrap(),
        None => {
            let letters = group.permutation(0).unwrap().len();
            let mut parts = Vec::new();
            let mut left = dim;
            while left > 0 {
                let pick = rng.random_range(0..3);
                let part = if pick == 0 && left >= letters {
                    UnitaryGroupRep::permutation(group.clone()).unwrap()
                } else if pick == 1 {
                    sign_rep(&group)
                } else {
                    UnitaryGroupRep::trivial(group.clone(), 1).unwrap()
                };
                left -= part.dim();
                parts.push(part);
            }
            parts.into_iter().reduce(|a, b| a.direct_sum(&b).unwrap()).unwrap()
        }
    };
    // mix the summands so no coordinate block is preserved
    let w = random_unitary(rng, base.dim());
    let base = base.conjugated(&w).unwrap();
    Instance {
        spec,
        base,
        cond: rng.random_range(1.5..=10.0),
    }
}

/// Independent re-check of every groupoid axiom; returns the number of
/// violations.
fn groupoid_axiom_violations(g: &FiniteMeasuredGroupoid) -> usize {
    let mut bad = 0;
    let n = g.arrow_count();
    for a in 0..n {
        let (s, t) = (g.src(a), g.tgt(a));
        let inv = g.inverse(a);
        bad += usize::from(g.src(inv) != t || g.tgt(inv) != s);
        bad += usize::from(g.compose(inv, a) != Some(g.unit_arrow(s)));
        bad += usize::from(g.compose(a, inv) != Some(g.unit_arrow(t)));
        bad += usize::from(g.compose(g.unit_arrow(t), a) != Some(a));
        bad += usize::from(g.compose(a, g.unit_arrow(s)) != Some(a));
        for h in 0..n {
            let composable = g.src(h) == t;
            bad += usize::from(g.compose(h, a).is_some() != composable);
            if !composable {
                continue;
            }
            let ha = g.compose(h, a).unwrap();
            bad += usize::from(g.src(ha) != s || g.tgt(ha) != g.tgt(h));
            for f in 0..n {
                if g.tgt(f) != s {
                    continue;
                }
                let left = g.compose(ha, f);
                let right = g.compose(h, g.compose(a, f).unwrap());
                bad += usize::from(left.is_none() || left != right);
            }
        }
    }
    let total: f64 = g.mu().iter().sum();
    bad += usize::from((total - 1.0).abs() > 1e-12);
    bad
}

struct RoundTrip {
    instances: usize,
    worst_unitarity: f64,
    worst_similarity: f64,
    worst_equivariance_excess: f64,
    worst_metric_excess: f64,
    unitarity_failures: usize,
    similarity_failures: usize,
    equivariance_failures: usize,
    converged_units: usize,
    solved_units: usize,
    worst_certificate: f64,
    axiom_violations: usize,
    elapsed: Duration,
}

fn round_trips(audit: &mut SolveAudit) -> RoundTrip {
    let start = Instant::now();
    let mut rng = seeded(4004);
    let opts = SolverOptions::new(1e-7);
    let mut out = RoundTrip {
        instances: 0,
        worst_unitarity: 0.0,
        worst_similarity: 0.0,
        worst_equivariance_excess: f64::NEG_INFINITY,
        worst_metric_excess: f64::NEG_INFINITY,
        unitarity_failures: 0,
        similarity_failures: 0,
        equivariance_failures: 0,
        converged_units: 0,
        solved_units: 0,
        worst_certificate: 0.0,
        axiom_violations: 0,
        elapsed: Duration::ZERO,
    };
    for k in 0..56 {
        let inst = random_instance(&mut rng, k);
        let seed = rng.random::<u64>();
        let rep = unitarize_core::generate_instance(&inst.spec, &inst.base, inst.cond, seed).unwrap();
        let g = rep.groupoid();
        out.axiom_violations += groupoid_axiom_violations(g);
        let result = unitarize_core::unitarize(&rep, &opts).unwrap();
        out.instances += 1;

        // audit each solve against its raw Gram set
        for (x, cert) in result.witness.certificates.iter().enumerate() {
            let Some(cert) = cert else { continue };
            let raw: Vec<SpdPoint> = (0..g.arrow_count())
                .filter(|&a| g.src(a) == x && g.is_essential(a))
                .map(|a| {
                    let r = rep.matrix(a);
                    SpdPoint::from_matrix(&r.adjoint() * r).unwrap()
                })
                .collect();
            audit.audit(&raw, cert);
            out.solved_units += 1;
            out.converged_units += usize::from(cert.converged);
            out.worst_certificate = out.worst_certificate.max(cert.center_error_bound);
        }

        let id = ComplexMatrix::identity(rep.dim());
        let psi = result.witness.psi_matrices();
        let psi_inv: Vec<ComplexMatrix> = psi.iter().map(|p| p.inverse().unwrap()).collect();
        let mut unitarity: f64 = 0.0;
        let mut similarity: f64 = 0.0;
        for a in (0..g.arrow_count()).filter(|&a| g.is_essential(a)) {
            let u = result.unitary.matrix(a);
            unitarity = unitarity.max((&(&u.adjoint() * u) - &id).l2_norm());
            let expected = &(&psi[g.tgt(a)] * rep.matrix(a)) * &psi_inv[g.src(a)];
            similarity = similarity.max((u - &expected).l2_norm());

            let r = rep.matrix(a);
            let sigma_t = result.witness.sigma[g.tgt(a)].as_matrix();
            let sigma_s = result.witness.sigma[g.src(a)].as_matrix();
            let residual = (&(&(&r.adjoint() * sigma_t) * r) - sigma_s).l2_norm();
            let bound_of = |x: usize| {
                result.witness.certificates[x]
                    .as_ref()
                    .map_or(0.0, |c| c.center_error_bound)
            };
            let allowed = 2.0 * (bound_of(g.src(a)) + bound_of(g.tgt(a))) + 1e-7;
            out.worst_equivariance_excess = out.worst_equivariance_excess.max(residual - allowed);
            out.equivariance_failures += usize::from(residual > allowed);
            // the same identity in the metric, where the certificates live
            let moved = SpdPoint::from_matrix(&(&r.adjoint() * sigma_t) * r).unwrap();
            let here = SpdPoint::from_matrix(sigma_s.clone()).unwrap();
            let gap = distance(&moved, &here).unwrap() - (bound_of(g.src(a)) + bound_of(g.tgt(a)));
            out.worst_metric_excess = out.worst_metric_excess.max(gap);
        }
        let check = unitarize_core::verify_similarity(&rep, &result.unitary, &psi, 1e-5).unwrap();
        out.worst_unitarity = out.worst_unitarity.max(unitarity);
        out.worst_similarity = out.worst_similarity.max(similarity.max(check.max_residual));
        out.unitarity_failures += usize::from(unitarity > 1e-5);
        out.similarity_failures += usize::from(!check.passed || similarity > 1e-5);
    }
    out.elapsed = start.elapsed();
    out
}

// ---------------------------------------------------------------- criterion 6

fn swap(mu: Vec<f64>) -> FiniteMeasuredGroupoid {
    ActionGroupoidSpec::new(
        FiniteGroup::cyclic(2),
        vec!["x0".into(), "x1".into()],
        mu,
        vec![vec![0, 1], vec![1, 0]],
    )
    .unwrap()
    .build()
    .unwrap()
}

fn groupoid_checks(extra_violations: usize) -> Outcome {
    let mut rng = seeded(6006);
    let examples = [
        (vec![0.5, 0.5], Invariance::Invariant, true),
        (vec![1.0 / 3.0, 2.0 / 3.0], Invariance::QuasiInvariant, true),
        (vec![0.0, 1.0], Invariance::Neither, true),
    ];
    let mut verdict_failures = 0;
    let mut axiom_violations = extra_violations;
    let mut worst_nu: f64 = 0.0;
    for (mu, invariance, ergodic) in &examples {
        let g = swap(mu.clone());
        axiom_violations += groupoid_axiom_violations(&g);
        verdict_failures += usize::from(g.check_invariance() != *invariance);
        verdict_failures += usize::from(g.check_ergodic() != *ergodic);
    }
    // trivial group: two uniform points are not ergodic, (1, 0) is
    for (mu, ergodic) in [(vec![0.5, 0.5], false), (vec![1.0, 0.0], true)] {
        let g = ActionGroupoidSpec::new(
            FiniteGroup::cyclic(1),
            vec!["a".into(), "b".into()],
            mu,
            vec![vec![0, 1]],
        )
        .unwrap()
        .build()
        .unwrap();
        verdict_failures += usize::from(g.check_ergodic() != ergodic);
    }

    // ν identity on random arrow subsets of random action groupoids
    for k in 0..20 {
        let inst = random_instance(&mut rng, k);
        let g = inst.spec.build().unwrap();
        axiom_violations += groupoid_axiom_violations(&g);
        for x in 0..g.unit_count() {
            let (src, tgt) = g.fibers(x).unwrap();
            axiom_violations += usize::from(src.len() != inst.spec.group.order());
            axiom_violations += usize::from(tgt.len() != inst.spec.group.order());
        }
        for _ in 0..10 {
            let subset: Vec<usize> = (0..g.arrow_count()).filter(|_| rng.random_bool(0.4)).collect();
            let lhs = g.nu(&subset);
            let rhs: f64 = (0..g.unit_count())
                .map(|x| subset.iter().filter(|&&a| g.tgt(a) == x).count() as f64 * g.mu()[x])
                .sum();
            worst_nu = worst_nu.max((lhs - rhs).abs());
        }
    }
    Outcome {
        pass: verdict_failures == 0 && axiom_violations == 0 && worst_nu <= 1e-12,
        detail: format!(
            "{axiom_violations} axiom violations, {verdict_failures} wrong verdicts on the worked examples, \
             worst nu identity gap {worst_nu:.2e}"
        ),
    }
}

// ---------------------------------------------------------------- criterion 7

fn degenerate_cases() -> Outcome {
    let mut problems = Vec::new();
    let opts = SolverOptions::new(1e-7);

    // unitary input: h unitary, so ρ is already unitary
    let spec = ActionGroupoidSpec::new(
        FiniteGroup::symmetric(3),
        (0..3).map(|x| format!("x{x}")).collect(),
        vec![0.2, 0.3, 0.5],
        (0..6)
            .map(|a| FiniteGroup::symmetric(3).permutation(a).unwrap())
            .collect(),
    )
    .unwrap();
    let base = UnitaryGroupRep::permutation(spec.group.clone()).unwrap();
    let rep = unitarize_core::generate_instance(&spec, &base, 1.0, 77).unwrap();
    let out = unitarize_core::unitarize(&rep, &opts).unwrap();
    let id = ComplexMatrix::identity(3);
    let psi_dev = out
        .witness
        .psi
        .iter()
        .map(|p| (p.as_matrix() - &id).l2_norm())
        .fold(0.0, f64::max);
    if psi_dev > 1e-8 || out.report.max_unitarity_residual > 1e-8 || out.report.max_equivariance_residual > 1e-8 {
        problems.push(format!("unitary input: psi deviation {psi_dev:.2e}"));
    }

    // one unit, Z/2, rho(s) = [[1,1],[0,-1]]
    let g = ActionGroupoidSpec::new(
        FiniteGroup::cyclic(2),
        vec!["x".into()],
        vec![1.0],
        vec![vec![0], vec![0]],
    )
    .unwrap()
    .build()
    .unwrap();
    let a = ComplexMatrix::from_real(&[&[1.0, 1.0], &[0.0, -1.0]]);
    let rep = Representation::new(g, 2, vec![ComplexMatrix::identity(2), a.clone()]).unwrap();
    let out = unitarize_core::unitarize(&rep, &opts).unwrap();
    // midpoint of I and A*A = [[1,1],[1,2]] is its square root (A*A + I)/sqrt(5)
    let s5 = 5f64.sqrt();
    let expected = ComplexMatrix::from_real(&[&[2.0 / s5, 1.0 / s5], &[1.0 / s5, 3.0 / s5]]);
    let sigma_err = (out.witness.sigma[0].as_matrix() - &expected).l2_norm();
    let u = out.unitary.matrix(1);
    let unitarity = (&(&u.adjoint() * u) - &ComplexMatrix::identity(2)).l2_norm();
    if sigma_err > 1e-7 || unitarity > 1e-8 {
        problems.push(format!(
            "2x2 example: sigma error {sigma_err:.2e}, unitarity {unitarity:.2e}"
        ));
    }
    let detail = if problems.is_empty() {
        format!("unitary input psi deviation {psi_dev:.2e}; 2x2 example sigma error {sigma_err:.2e}, unitarity {unitarity:.2e}")
    } else {
        problems.join("; ")
    };
    Outcome {
        pass: problems.is_empty(),
        detail,
    }
}

fn main() {
    let mut all = true;
    let mut record = |index: usize, name: &str, outcome: Outcome| {
        report(index, name, &outcome);
        all &= outcome.pass;
    };

    record(1, "geometry properties", geometry_suite());

    let mut audit = SolveAudit::new();
    record(2, "circumcenter oracle equivalence", oracle_equivalence(&mut audit));
    let rt = round_trips(&mut audit);

    record(
        3,
        "certificate soundness",
        Outcome {
            pass: audit.lower_above_radius == 0 && audit.containment_failures == 0,
            detail: format!(
                "{} solves, {} lower bounds above radius, {} containment failures",
                audit.solves, audit.lower_above_radius, audit.containment_failures
            ),
        },
    );
    record(
        4,
        "round trip to a unitary representation",
        Outcome {
            pass: rt.instances >= 50
                && rt.unitarity_failures == 0
                && rt.similarity_failures == 0
                && rt.elapsed < Duration::from_secs(300),
            detail: format!(
                "{} instances, worst unitarity {:.2e}, worst similarity {:.2e}, {}/{} unit solves certified at eps \
                 (worst certificate {:.2e}), {:.1}s",
                rt.instances,
                rt.worst_unitarity,
                rt.worst_similarity,
                rt.converged_units,
                rt.solved_units,
                rt.worst_certificate,
                rt.elapsed.as_secs_f64()
            ),
        },
    );
    record(
        5,
        "sigma equivariance",
        Outcome {
            pass: rt.equivariance_failures == 0 && rt.worst_metric_excess <= 1e-9,
            detail: format!(
                "{} arrows over the allowance, worst (residual - allowance) {:.2e}, \
                 worst metric (distance - certificates) {:.2e}",
                rt.equivariance_failures, rt.worst_equivariance_excess, rt.worst_metric_excess
            ),
        },
    );
    record(6, "groupoid axioms and verdicts", groupoid_checks(rt.axiom_violations));
    record(7, "degenerate sanity", degenerate_cases());

    if !all {
        std::process::exit(1);
    }
}
