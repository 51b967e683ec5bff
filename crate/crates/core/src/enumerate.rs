//! Exhaustive enumeration of loops of a given order.
//!
//! Cells are filled row by row (upper triangle only for commutative
//! searches) by [`crate::search`]. With `up_to_iso`, row 1 is fixed to the
//! least form of a left-translation cycle type and every later row must have
//! a form no smaller than it; any loop can be relabeled to meet this, and the
//! survivors are then deduplicated by canonical form.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, cycle_type, row_form, translation_cycle_types, CanonicalForm};
use crate::error::{Error, Result};
use crate::partial::PartialTable;
use crate::power::bracket_sets;
use crate::search::{dfs, frontier, Constraints, Propagator, PruneCounts, SearchCounters};
use crate::table::{ElementId, LoopTable};

/// Orders above this are refused unless the cap is raised explicitly.
pub const DEFAULT_ORDER_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub order: usize,
    pub require_commutative: bool,
    pub require_jordan: bool,
    /// Odd orders only: the main diagonal is a permutation with `e·e = e`.
    pub require_identity_diag_odd: bool,
    pub up_to_iso: bool,
    pub nonassociative_only: bool,
    pub limit: Option<u64>,
    pub worker_count: usize,
    pub order_cap: usize,
}

impl SearchConfig {
    /// All loops of order `n`, labeled.
    pub fn loops(order: usize) -> Self {
        SearchConfig {
            order,
            require_commutative: false,
            require_jordan: false,
            require_identity_diag_odd: false,
            up_to_iso: false,
            nonassociative_only: false,
            limit: None,
            worker_count: 1,
            order_cap: DEFAULT_ORDER_CAP,
        }
    }

    /// Commutative loops of order `n` up to isomorphism, with diagonal
    /// pruning for odd `n`.
    pub fn commutative(order: usize) -> Self {
        SearchConfig {
            require_commutative: true,
            require_identity_diag_odd: order % 2 == 1,
            up_to_iso: true,
            ..Self::loops(order)
        }
    }

    /// Jordan loops of order `n` up to isomorphism, with diagonal pruning
    /// for odd `n`.
    pub fn jordan(order: usize) -> Self {
        SearchConfig { require_jordan: true, ..Self::commutative(order) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::InvalidConfig("order must be positive".into()));
        }
        if self.order > self.order_cap {
            return Err(Error::OrderTooLarge { order: self.order, cap: self.order_cap });
        }
        if self.order > crate::table::MAX_ORDER {
            return Err(Error::OrderTooLarge { order: self.order, cap: crate::table::MAX_ORDER });
        }
        if self.require_jordan && !self.require_commutative {
            return Err(Error::InvalidConfig("require_jordan needs require_commutative".into()));
        }
        if self.require_identity_diag_odd && (self.order % 2 == 0 || !self.require_commutative) {
            return Err(Error::InvalidConfig(
                "diagonal pruning needs odd order and require_commutative".into(),
            ));
        }
        if self.worker_count == 0 {
            return Err(Error::InvalidConfig("worker_count must be positive".into()));
        }
        Ok(())
    }

    pub fn constraints(&self) -> Constraints {
        Constraints {
            commutative: self.require_commutative,
            jordan: self.require_jordan,
            diagonal_transversal: self.require_identity_diag_odd,
            exponent3: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    /// Completed tables that passed every filter, before deduplication.
    pub tables_emitted: u64,
    /// Distinct canonical forms (only counted with `up_to_iso`).
    pub iso_classes: u64,
    pub prunes_by_constraint: PruneCounts,
    /// Completions that failed the independent post-hoc predicate check.
    /// Always zero unless the propagator is wrong.
    pub verification_failures: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// With `up_to_iso`, one canonical representative per class in ascending
    /// canonical-form order; otherwise every labeled table in ascending
    /// row-major order.
    pub tables: Vec<LoopTable>,
    pub stats: SearchStats,
}

/// Rejects rows whose left translation has a smaller form than row 1.
/// `accepted` has bit `r` set once row `r` is complete and checked.
fn symmetry_filter(n: usize, target: Vec<u8>) -> impl Fn(&Propagator, u64) -> Option<u64> + Sync {
    let first_cycle = target.iter().position(|&v| v == 0).map_or(n, |p| p + 1);
    move |state: &Propagator, mut accepted: u64| {
        for r in 2..n {
            if accepted & (1 << r) != 0 {
                continue;
            }
            if state.row_complete(r) {
                if row_form(&cycle_type(state.row(r))) < target {
                    return None;
                }
                accepted |= 1 << r;
            } else {
                // a visible cycle through 0 shorter than row 1's is already fatal
                let row = state.row(r);
                let mut k = 0usize;
                for len in 1..first_cycle {
                    let next = row[k];
                    if next == crate::partial::HOLE {
                        break;
                    }
                    k = next as usize;
                    if k == 0 {
                        if len < first_cycle {
                            return None;
                        }
                        break;
                    }
                }
            }
        }
        Some(accepted)
    }
}

/// Root states of the search with the filter each needs.
fn roots(cfg: &SearchConfig) -> Vec<(Propagator, Option<Vec<u8>>)> {
    let n = cfg.order;
    let cons = cfg.constraints();
    let base = PartialTable::with_identity(n).expect("validated order");
    let Ok(base) = Propagator::new(&base, cons) else {
        return Vec::new();
    };
    if !cfg.up_to_iso || n <= 2 {
        return vec![(base, None)];
    }
    translation_cycle_types(n)
        .into_iter()
        .filter_map(|t| {
            let form = row_form(&t);
            let mut state = base.clone();
            for (c, &v) in form.iter().enumerate() {
                state.assign(1, c, v as usize).ok()?;
            }
            Some((state, Some(form)))
        })
        .collect()
}

struct Found {
    table: LoopTable,
    form: Option<CanonicalForm>,
}

/// Runs the search described by `cfg` and collects its output.
pub fn enumerate_loops(cfg: &SearchConfig) -> Result<Enumeration> {
    cfg.validate()?;
    let started = Instant::now();
    let n = cfg.order;
    let mut counters = SearchCounters::default();

    // split every root after rows 0..=2 into independent subtrees
    let split_row = 2.min(n - 1);
    let mut work: Vec<(Propagator, u64, Option<Vec<u8>>)> = Vec::new();
    let mut early: Vec<LoopTable> = Vec::new();
    for (root, target) in roots(cfg) {
        let filter = target.clone().map(|t| symmetry_filter(n, t));
        let filter_ref = filter.as_ref().map(|f| f as &crate::search::NodeFilter<'_>);
        let initial = match filter_ref {
            Some(f) => match f(&root, 0) {
                Some(a) => a,
                None => continue,
            },
            None => 0,
        };
        let (nodes, done) = frontier(&root, initial, split_row, filter_ref, &mut counters);
        early.extend(done);
        work.extend(nodes.into_iter().map(|(s, a)| (s, a, target.clone())));
    }

    let emitted = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let accept = |t: LoopTable, out: &mut Vec<Found>, failures: &mut u64| -> bool {
        if stop.load(Ordering::Relaxed) {
            return false;
        }
        let verified = (!cfg.require_commutative || t.is_commutative())
            && (!cfg.require_jordan || t.is_jordan());
        if !verified {
            *failures += 1;
            return true;
        }
        if cfg.nonassociative_only && t.is_associative() {
            return true;
        }
        let form = cfg.up_to_iso.then(|| canonical_form(&t));
        out.push(Found { table: t, form });
        let total = emitted.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(limit) = cfg.limit {
            if !cfg.up_to_iso && total >= limit {
                stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    };

    let run = |(state, acc, target): &(Propagator, u64, Option<Vec<u8>>)| {
        let mut local = SearchCounters::default();
        let mut out = Vec::new();
        let mut failures = 0u64;
        if stop.load(Ordering::Relaxed) {
            return (local, out, failures);
        }
        let filter = target.clone().map(|t| symmetry_filter(n, t));
        let filter_ref = filter.as_ref().map(|f| f as &crate::search::NodeFilter<'_>);
        dfs(state, *acc, filter_ref, &mut local, &mut |t| accept(t, &mut out, &mut failures));
        (local, out, failures)
    };

    let mut failures = 0u64;
    let mut found: Vec<Found> = Vec::new();
    for t in early {
        accept(t, &mut found, &mut failures);
    }
    let results: Vec<(SearchCounters, Vec<Found>, u64)> = if cfg.worker_count > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.worker_count)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(|| work.par_iter().map(run).collect())
    } else {
        work.iter().map(run).collect()
    };
    for (c, f, fail) in results {
        counters.merge(&c);
        found.extend(f);
        failures += fail;
    }

    let tables_emitted = found.len() as u64;
    let mut tables: Vec<LoopTable>;
    let mut iso_classes = 0;
    if cfg.up_to_iso {
        let mut classes: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
        for f in found {
            classes.insert(f.form.expect("computed with up_to_iso"), ());
        }
        iso_classes = classes.len() as u64;
        tables = classes.into_keys().map(|c| c.to_table()).collect();
        if let Some(limit) = cfg.limit {
            tables.truncate(limit as usize);
        }
    } else {
        tables = found.into_iter().map(|f| f.table).collect();
        tables.sort();
        tables.dedup();
        if let Some(limit) = cfg.limit {
            tables.truncate(limit as usize);
        }
    }
    Ok(Enumeration {
        tables,
        stats: SearchStats {
            nodes_expanded: counters.nodes_expanded,
            tables_emitted,
            iso_classes,
            prunes_by_constraint: counters.prunes,
            verification_failures: failures,
            wall_time: started.elapsed(),
        },
    })
}

/// First Jordan loop of order `n` (in canonical order) with a generator `x`
/// whose powers below `k` are well defined while `x^k` is not.
pub fn find_power_witness(n: usize, k: usize) -> Result<Option<(LoopTable, ElementId)>> {
    find_power_witness_with(&SearchConfig::jordan(n), k)
}

pub fn find_power_witness_with(
    cfg: &SearchConfig,
    k: usize,
) -> Result<Option<(LoopTable, ElementId)>> {
    if k == 0 {
        return Ok(None);
    }
    let cfg = SearchConfig { up_to_iso: true, limit: None, ..cfg.clone() };
    let found = enumerate_loops(&cfg)?;
    for q in found.tables {
        for x in q.elements() {
            let p = bracket_sets(&q, x, k);
            if p.subloop_order == q.order() && p.well_defined_through(k - 1) && !p.is_well_defined(k)
            {
                return Ok(Some((q, x)));
            }
        }
    }
    Ok(None)
}

/// Targeted search for a Jordan loop of order `n` with a generator `x = 1`
/// whose powers `x^j = j` for `j < k` are well defined while `x^k` is not.
///
/// Pinning the powers to labels explores one labeling per candidate and
/// stops at the first hit, so this reaches orders far beyond exhaustive
/// enumeration. It only sees witnesses whose powers below `k` are distinct;
/// `x^k` is then `e` or a fresh element, and some `x^i·x^{k−i}` differs
/// from it.
pub fn search_power_witness(n: usize, k: usize) -> Result<Option<(LoopTable, ElementId)>> {
    if n > crate::table::MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, cap: crate::table::MAX_ORDER });
    }
    if k < 3 || k > n {
        return Ok(None);
    }
    let cons = Constraints {
        commutative: true,
        jordan: true,
        diagonal_transversal: n % 2 == 1,
        exponent3: false,
    };
    let mut base = PartialTable::with_identity(n)?;
    for j in 1..k - 1 {
        base.set(1, j, j + 1)?;
        base.set(j, 1, j + 1)?;
    }
    let Ok(base) = Propagator::new(&base, cons) else {
        return Ok(None);
    };
    let fresh = (k < n).then_some(k);
    for xk in [Some(0), fresh].into_iter().flatten() {
        let mut pinned = base.clone();
        if pinned.assign(1, k - 1, xk).is_err() {
            continue;
        }
        for i in 2..=k / 2 {
            let mut branch = pinned.clone();
            if branch.exclude(i, k - i, xk).is_err() {
                continue;
            }
            let mut counters = SearchCounters::default();
            let mut found = None;
            dfs(&branch, 0, None, &mut counters, &mut |t| {
                let p = bracket_sets(&t, 1, k);
                let hit = p.subloop_order == n && p.well_defined_through(k - 1) && !p.is_well_defined(k);
                if hit && t.is_jordan() {
                    found = Some(t);
                    return false;
                }
                true
            });
            if let Some(t) = found {
                return Ok(Some((t, 1)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let mut cfg = SearchConfig::loops(4);
        cfg.require_jordan = true;
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        let mut cfg = SearchConfig::commutative(4);
        cfg.require_identity_diag_odd = true;
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        assert!(matches!(
            SearchConfig::loops(11).validate(),
            Err(Error::OrderTooLarge { order: 11, cap: 10 })
        ));
    }

    #[test]
    fn order_three_has_one_loop() {
        let e = enumerate_loops(&SearchConfig::loops(3)).unwrap();
        assert_eq!(e.tables.len(), 1);
        assert_eq!(e.tables[0], crate::groups::cyclic(3));
    }

    #[test]
    fn loops_of_order_five_up_to_iso() {
        // 56 labeled loops of order 5 fall into 6 isomorphism classes
        let mut cfg = SearchConfig::loops(5);
        assert_eq!(enumerate_loops(&cfg).unwrap().tables.len(), 56);
        cfg.up_to_iso = true;
        let e = enumerate_loops(&cfg).unwrap();
        assert_eq!(e.tables.len(), 6);
        assert!(e.stats.tables_emitted >= e.stats.iso_classes);
    }

    #[test]
    fn limit_truncates() {
        let mut cfg = SearchConfig::loops(5);
        cfg.limit = Some(3);
        assert_eq!(enumerate_loops(&cfg).unwrap().tables.len(), 3);
    }

    #[test]
    fn no_ill_defined_power_at_order_equal_to_exponent() {
        // x^1..x^5 well defined in an order-6 loop makes <x> cyclic
        assert!(find_power_witness(6, 6).unwrap().is_none());
        assert!(search_power_witness(6, 6).unwrap().is_none());
    }

    #[test]
    fn targeted_witness_for_sixth_power() {
        assert!(search_power_witness(11, 6).unwrap().is_none());
        let (t, x) = search_power_witness(12, 6).unwrap().expect("order 12 witness");
        assert!(t.is_jordan() && !t.is_associative());
        let p = bracket_sets(&t, x, 6);
        assert_eq!(p.first_ill_defined(), Some(6));
        assert_eq!(p.subloop_order, 12);
    }

    #[test]
    fn witness_degenerate_exponents() {
        assert!(search_power_witness(12, 2).unwrap().is_none());
        assert!(search_power_witness(5, 6).unwrap().is_none());
        assert!(search_power_witness(33, 6).is_err());
    }
}
