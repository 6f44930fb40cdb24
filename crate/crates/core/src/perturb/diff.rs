//! Matching the zeros of `f` with those of a perturbation `F`.

use num_complex::Complex64;
use serde::Serialize;

use crate::harmonic::{ZeroCensus, ZeroRecord, DEDUP_RELATIVE};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MatchedPair {
    pub before: ZeroRecord,
    pub after: ZeroRecord,
    pub distance: f64,
    /// Radius of the disk around `before` in which the partner was sought.
    pub radius: f64,
}

impl MatchedPair {
    pub fn index_preserved(&self) -> bool {
        self.before.index == self.after.index
    }
}

/// Zeros of `f` paired with nearby zeros of `F`.
///
/// Zero `z_k` of `f` is paired inside `D(z_k, r_k)` with
/// `r_k = min(d / 2, |z_k - z0| / 2)`, where `d` is the smallest distance
/// between two zeros of `f`; the radii make the disks disjoint and keep them
/// away from the perturbation point. Pairs are assigned greedily by
/// increasing distance, so the pairing is injective. A zero of `f` at `z0`
/// itself is removed by the pole and recorded as consumed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusDiff {
    #[serde(with = "crate::serde_complex")]
    pub z0: Complex64,
    pub consumed: Option<ZeroRecord>,
    pub matched: Vec<MatchedPair>,
    pub created: Vec<ZeroRecord>,
    pub destroyed: Vec<ZeroRecord>,
    pub index_mismatches: usize,
    /// `count(F) - (count(f) - consumed)`.
    pub net_created: i64,
}

impl CensusDiff {
    pub fn new(before: &ZeroCensus, after: &ZeroCensus, z0: Complex64) -> Self {
        let tol = DEDUP_RELATIVE * (1.0 + z0.norm());
        let consumed_at = before
            .zeros
            .iter()
            .position(|z| (z.location - z0).norm() < tol);
        let consumed = consumed_at.map(|i| before.zeros[i]);
        let survivors: Vec<ZeroRecord> = before
            .zeros
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != consumed_at)
            .map(|(_, z)| *z)
            .collect();
        let mut min_gap = f64::INFINITY;
        for (i, a) in before.zeros.iter().enumerate() {
            for b in &before.zeros[i + 1..] {
                min_gap = min_gap.min((a.location - b.location).norm());
            }
        }
        let radii: Vec<f64> = survivors
            .iter()
            .map(|z| (0.5 * min_gap).min(0.5 * (z.location - z0).norm()))
            .collect();
        let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
        for (k, zk) in survivors.iter().enumerate() {
            for (j, w) in after.zeros.iter().enumerate() {
                let d = (zk.location - w.location).norm();
                if d < radii[k] {
                    candidates.push((d, k, j));
                }
            }
        }
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut used_before = vec![false; survivors.len()];
        let mut used_after = vec![false; after.zeros.len()];
        let mut matched = Vec::new();
        for (d, k, j) in candidates {
            if used_before[k] || used_after[j] {
                continue;
            }
            used_before[k] = true;
            used_after[j] = true;
            matched.push(MatchedPair {
                before: survivors[k],
                after: after.zeros[j],
                distance: d,
                radius: radii[k],
            });
        }
        matched.sort_by(|a, b| {
            a.before
                .location
                .re
                .total_cmp(&b.before.location.re)
                .then(a.before.location.im.total_cmp(&b.before.location.im))
        });
        let created: Vec<ZeroRecord> = after
            .zeros
            .iter()
            .zip(&used_after)
            .filter(|(_, u)| !**u)
            .map(|(z, _)| *z)
            .collect();
        let destroyed: Vec<ZeroRecord> = survivors
            .iter()
            .zip(&used_before)
            .filter(|(_, u)| !**u)
            .map(|(z, _)| *z)
            .collect();
        let index_mismatches = matched.iter().filter(|p| !p.index_preserved()).count();
        let net_created = after.count() as i64 - (before.count() as i64 - consumed.is_some() as i64);
        CensusDiff {
            z0,
            consumed,
            matched,
            created,
            destroyed,
            index_mismatches,
            net_created,
        }
    }

    /// Zeros of `F` in `D(z0, radius)` beyond those of `f` there, not
    /// counting the consumed zero.
    pub fn created_near(&self, before: &ZeroCensus, after: &ZeroCensus, radius: f64) -> i64 {
        let inside = |c: &ZeroCensus| c.in_disk(self.z0, radius).count() as i64;
        inside(after) - (inside(before) - self.consumed.is_some() as i64)
    }

    /// Every zero of `f` other than the consumed one has a partner of the
    /// same index.
    pub fn survivors_ok(&self) -> bool {
        self.destroyed.is_empty() && self.index_mismatches == 0
    }
}
