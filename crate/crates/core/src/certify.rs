//! A machine-checked case analysis showing every Jordan loop of order 9 is
//! a group.
//!
//! A non-identity element either generates the loop or a subloop of order 3,
//! so the loop is cyclic or of exponent 3. Each horn is replayed as
//! constrained completions of a partial table; every completion found is
//! re-verified with the full-table predicates before it counts.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::canon::canonical_form;
use crate::enumerate::{enumerate_loops, SearchConfig};
use crate::error::{Error, Result};
use crate::fixtures::{self, A, A2, B, B2, EXPONENT3_NAMES};
use crate::groups;
use crate::identities::{
    check_even_subloop_parity, check_involution_parity, check_monogenic_lemma,
    check_square_root_parity, check_subloop_bound, LemmaId, LemmaReport, Status,
};
use crate::partial::PartialTable;
use crate::power::bracket_sets;
use crate::search::{dfs, Constraints, Propagator, SearchCounters};
use crate::subloop::monogenic_subloop;
use crate::table::LoopTable;

/// Every completion of `p` satisfying `cons`, with the identity row and
/// column imposed, sorted. Each completion is re-checked against the
/// full-table predicates; a mismatch means the propagator is wrong and is
/// reported as [`Error::CertificationFailed`].
pub fn complete_partial(p: &PartialTable, cons: Constraints) -> Result<Vec<LoopTable>> {
    p.check_consistent().map_err(|e| Error::InconsistentPartial(e.to_string()))?;
    let n = p.order();
    let mut start = p.clone();
    for i in 0..n {
        start.set(0, i, i)?;
        start.set(i, 0, i)?;
    }
    let Ok(root) = Propagator::new(&start, cons) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut counters = SearchCounters::default();
    dfs(&root, 0, None, &mut counters, &mut |t| {
        out.push(t);
        true
    });
    for t in &out {
        if let Some(problem) = verify_completion(p, t, cons) {
            return Err(Error::CertificationFailed { stage: "completion".into(), detail: problem });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn verify_completion(p: &PartialTable, t: &LoopTable, cons: Constraints) -> Option<String> {
    // re-validate Latin and identity from scratch
    if let Err(e) = LoopTable::from_cells(t.order(), t.cells().to_vec()) {
        return Some(format!("completion is not a loop: {e}"));
    }
    for r in 0..p.order() {
        for c in 0..p.order() {
            if p.get(r, c).is_some_and(|v| v != t.mul(r, c)) {
                return Some(format!("completion overwrites cell ({r},{c})"));
            }
        }
    }
    if cons.commutative && !t.is_commutative() {
        return Some("completion is not commutative".into());
    }
    if cons.jordan && !t.is_jordan() {
        return Some("completion violates the Jordan identity".into());
    }
    if cons.exponent3 && !t.is_exponent3() {
        return Some("completion is not of exponent 3".into());
    }
    if cons.diagonal_transversal {
        let diag: BTreeSet<usize> = t.elements().map(|x| t.square(x)).collect();
        if diag.len() != t.order() {
            return Some("completion repeats a value on the diagonal".into());
        }
    }
    None
}

/// One named assertion with its observed outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), passed, detail: detail.into() }
}

fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn first_failure(stage: &str, checks: &[Check]) -> Result<()> {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::CertificationFailed {
            stage: stage.into(),
            detail: format!("{}: {}", c.name, c.detail),
        }),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------- cyclic case

/// Where a generated entry of the cyclic-case table comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellRule {
    /// `x·x^j = x^{j+1}` or `e·x^j = x^j`.
    Definition,
    /// `x^i x² = x^{i+2}`
    MulSquare,
    /// `x^i x⁴ = x^{i+4}`
    MulFourth,
    /// `x^i x⁸ = x^{i+8}` for `i ≢ 3 (mod 4)`
    MulEighth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedCell {
    pub row: usize,
    pub col: usize,
    pub value: usize,
    pub rule: CellRule,
}

/// Entries `x^i x^j` of an order-9 cyclic Jordan loop implied by the
/// additive power identities and commutativity, exponents taken mod 9.
pub fn cyclic_case_cells() -> Vec<GeneratedCell> {
    let mut cells: Vec<GeneratedCell> = Vec::new();
    let place = |i: usize, j: usize, rule: CellRule, cells: &mut Vec<GeneratedCell>| {
        for (row, col) in [(i, j), (j, i)] {
            if !cells.iter().any(|g| g.row == row && g.col == col) {
                cells.push(GeneratedCell { row, col, value: (i + j) % 9, rule });
            }
        }
    };
    for j in 0..9 {
        place(0, j, CellRule::Definition, &mut cells);
        place(1, j, CellRule::Definition, &mut cells);
    }
    for i in 0..9 {
        place(i, 2, CellRule::MulSquare, &mut cells);
        place(i, 4, CellRule::MulFourth, &mut cells);
        if i % 4 != 3 {
            place(i, 8, CellRule::MulEighth, &mut cells);
        }
    }
    cells.sort_by_key(|g| (g.row, g.col));
    cells
}

/// Cells where the generated table and the transcription disagree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FixtureDiff {
    pub generated_only: Vec<(usize, usize, usize)>,
    pub transcribed_only: Vec<(usize, usize, usize)>,
    pub conflicting: Vec<(usize, usize, usize, usize)>,
}

impl FixtureDiff {
    pub fn is_empty(&self) -> bool {
        self.generated_only.is_empty() && self.transcribed_only.is_empty() && self.conflicting.is_empty()
    }
}

pub fn diff_cyclic_fixture(generated: &PartialTable, transcribed: &PartialTable) -> FixtureDiff {
    let mut diff = FixtureDiff::default();
    for r in 0..9 {
        for c in 0..9 {
            match (generated.get(r, c), transcribed.get(r, c)) {
                (Some(g), None) => diff.generated_only.push((r, c, g)),
                (None, Some(t)) => diff.transcribed_only.push((r, c, t)),
                (Some(g), Some(t)) if g != t => diff.conflicting.push((r, c, g, t)),
                _ => {}
            }
        }
    }
    diff
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicBranch {
    /// Value tried for `x³·x³`, as an exponent of `x`.
    pub value: usize,
    pub completions: usize,
    pub associative: usize,
    pub isomorphic_to_z9: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicCase {
    pub generated: Vec<GeneratedCell>,
    pub fixture_diff: FixtureDiff,
    /// Values left for `x³·x³` by row, column and diagonal exclusion.
    pub pivot_candidates: Vec<usize>,
    pub branches: Vec<CyclicBranch>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Constraints for the cyclic horn: commutative and Jordan. The diagonal is
/// not forced to be a permutation here; that only narrows the pivot cell.
const CYCLIC_CONSTRAINTS: Constraints =
    Constraints { commutative: true, jordan: true, diagonal_transversal: false, exponent3: false };

pub fn cyclic_case_record() -> Result<CyclicCase> {
    let generated = cyclic_case_cells();
    let mut table = PartialTable::empty(9)?;
    for g in &generated {
        table.set(g.row, g.col, g.value)?;
    }
    let fixture_diff = diff_cyclic_fixture(&table, &fixtures::table_1_transcribed());
    let mut checks = vec![check(
        "table matches transcription",
        fixture_diff.is_empty(),
        format!(
            "{} generated-only, {} transcribed-only, {} conflicting",
            fixture_diff.generated_only.len(),
            fixture_diff.transcribed_only.len(),
            fixture_diff.conflicting.len()
        ),
    )];

    let mut used = 0u32;
    for k in 0..9 {
        for v in [table.get(3, k), table.get(k, 3), table.get(k, k)].into_iter().flatten() {
            used |= 1 << v;
        }
    }
    let pivot_candidates: Vec<usize> = (0..9).filter(|v| used & (1 << v) == 0).collect();
    checks.push(check(
        "pivot candidates are x and x^6",
        pivot_candidates == [1, 6],
        format!("{pivot_candidates:?}"),
    ));

    let z9 = canonical_form(&groups::cyclic(9));
    let mut branches = Vec::new();
    for &value in &pivot_candidates {
        let mut branch = table.clone();
        branch.set(3, 3, value)?;
        let completions = complete_partial(&branch, CYCLIC_CONSTRAINTS)?;
        for t in &completions {
            let profile = bracket_sets(t, 1, 27);
            let cyclic_powers = (0..=27).all(|k| profile.rpow(k) == (k as usize) % 9);
            checks.push(check(
                &format!("x^3 x^3 = x^{value} completion reduces powers mod 9"),
                cyclic_powers,
                "x^n = x^(n mod 9) for n <= 27",
            ));
            checks.push(check(
                &format!("x^3 x^3 = x^{value} completion has x^1..x^8 well defined"),
                profile.well_defined_through(8),
                format!("first ill-defined exponent: {:?}", profile.first_ill_defined()),
            ));
        }
        branches.push(CyclicBranch {
            value,
            completions: completions.len(),
            associative: completions.iter().filter(|t| t.is_associative()).count(),
            isomorphic_to_z9: completions.iter().filter(|t| canonical_form(t) == z9).count(),
        });
    }
    let branch = |v: usize| branches.iter().find(|b| b.value == v);
    checks.push(check(
        "x^3 x^3 = x admits no Jordan completion",
        branch(1).is_some_and(|b| b.completions == 0),
        format!("{} completions", branch(1).map_or(0, |b| b.completions)),
    ));
    checks.push(check(
        "x^3 x^3 = x^6 completes only to Z9",
        branch(6).is_some_and(|b| {
            b.completions > 0 && b.associative == b.completions && b.isomorphic_to_z9 == b.completions
        }),
        branch(6).map_or_else(
            || "branch not tried".to_string(),
            |b| format!("{} completions, {} isomorphic to Z9", b.completions, b.isomorphic_to_z9),
        ),
    ));
    let passed = all_passed(&checks);
    Ok(CyclicCase { generated, fixture_diff, pivot_candidates, branches, checks, passed })
}

/// The cyclic horn: the generated table of powers completes only to `Z9`.
pub fn certify_cyclic_case() -> Result<CyclicCase> {
    let record = cyclic_case_record()?;
    first_failure("cyclic case", &record.checks)?;
    Ok(record)
}

// ---------------------------------------------------------- exponent-3 case

/// Latin, commutative, Jordan and `x·x² = e`.
pub const EXPONENT3_CONSTRAINTS: Constraints =
    Constraints { commutative: true, jordan: true, diagonal_transversal: false, exponent3: true };

const LATIN_COMMUTATIVE: Constraints =
    Constraints { commutative: true, jordan: false, diagonal_transversal: false, exponent3: false };

/// Completion counts for Table (D) under one substitution of `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockResolution {
    pub x: String,
    pub y: String,
    /// Latin and commutative completions.
    pub quasigroup_completions: usize,
    /// Whether the unique such completion follows the Table (E) pattern.
    pub matches_table_e: bool,
    pub jordan_completions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exponent3Case {
    pub constraints: Constraints,
    pub completions: usize,
    pub iso_classes: usize,
    pub associative_classes: usize,
    pub matches_z3xz3: bool,
    pub resolutions: Vec<BlockResolution>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn off_diagonal_blocks() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (1 + 2 * i, 1 + 2 * j)))
}

/// The 2×2 block at rows `r, r+1` and columns `c, c+1` repeats a value.
fn block_repeats(t: &LoopTable, r: usize, c: usize) -> bool {
    let vals: BTreeSet<usize> =
        [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)].iter().map(|&(i, j)| t.mul(i, j)).collect();
    vals.len() < 4
}

/// The block holds some element and its square in one row or column.
fn block_pairs_square(t: &LoopTable, r: usize, c: usize) -> bool {
    let sq = fixtures::square_label;
    let lines = [
        (t.mul(r, c), t.mul(r, c + 1)),
        (t.mul(r + 1, c), t.mul(r + 1, c + 1)),
        (t.mul(r, c), t.mul(r + 1, c)),
        (t.mul(r, c + 1), t.mul(r + 1, c + 1)),
    ];
    lines.iter().any(|&(u, v)| sq(u) == v)
}

pub fn exponent3_case_record(constraints: Constraints) -> Result<Exponent3Case> {
    let completions = complete_partial(&fixtures::table_a(), constraints)?;
    let forms: BTreeSet<_> = completions.iter().map(canonical_form).collect();
    let associative_classes = forms.iter().filter(|f| f.to_table().is_associative()).count();
    let z3xz3 = canonical_form(&groups::z3xz3());
    let matches_z3xz3 = forms.len() == 1 && forms.contains(&z3xz3);
    let mut checks = vec![
        check("completions exist", !completions.is_empty(), format!("{}", completions.len())),
        check(
            "exactly one isomorphism class",
            forms.len() == 1,
            format!("{} classes among {} completions", forms.len(), completions.len()),
        ),
        check(
            "every class is associative",
            associative_classes == forms.len(),
            format!("{associative_classes} of {}", forms.len()),
        ),
        check("the class is Z3xZ3", matches_z3xz3, "canonical form comparison"),
    ];

    // repeated element in an off-diagonal block
    let b = complete_partial(&fixtures::table_b(), LATIN_COMMUTATIVE)?;
    checks.push(check(
        "repeated-element block has no quasigroup completion",
        b.is_empty(),
        format!("{} completions", b.len()),
    ));
    let repeats = completions
        .iter()
        .filter(|t| off_diagonal_blocks().any(|(r, c)| block_repeats(t, r, c)))
        .count();
    checks.push(check(
        "no completion repeats an element in a block",
        repeats == 0,
        format!("{repeats} offending completions"),
    ));

    // element and its square sharing a block row
    let forced = complete_partial(&fixtures::table_c(None), constraints)?;
    checks.push(check(
        "element-and-square block has no completion",
        forced.is_empty(),
        format!("{} completions", forced.len()),
    ));
    for (y, name) in [(A, "a"), (A2, "a²")] {
        let c = complete_partial(&fixtures::table_c(Some(y)), LATIN_COMMUTATIVE)?;
        checks.push(check(
            &format!("element-and-square block with y = {name} has no quasigroup completion"),
            c.is_empty(),
            format!("{} completions", c.len()),
        ));
    }
    let paired = completions
        .iter()
        .filter(|t| off_diagonal_blocks().any(|(r, c)| block_pairs_square(t, r, c)))
        .count();
    checks.push(check(
        "no completion pairs an element with its square in a block line",
        paired == 0,
        format!("{paired} offending completions"),
    ));

    // resolving x = da and y = d²b
    let mut resolutions = Vec::new();
    let mut table_f_found = false;
    for (x, y) in [(B, A), (B, A2), (B2, A), (B2, A2)] {
        let (quasi, jordan) = match fixtures::table_d(x, y) {
            Ok(d) => (complete_partial(&d, LATIN_COMMUTATIVE)?, complete_partial(&d, constraints)?),
            Err(_) => (Vec::new(), Vec::new()),
        };
        let pattern = fixtures::table_e(x, y).ok().and_then(|p| p.to_loop_table().ok());
        if (x, y) == (B, A) {
            table_f_found = quasi == [fixtures::table_f()];
        }
        resolutions.push(BlockResolution {
            x: EXPONENT3_NAMES[x].into(),
            y: EXPONENT3_NAMES[y].into(),
            quasigroup_completions: quasi.len(),
            matches_table_e: quasi.len() == 1 && pattern.as_ref() == quasi.first(),
            jordan_completions: jordan.len(),
        });
    }
    let forced_ba = &resolutions[0];
    checks.push(check(
        "x = b, y = a completes uniquely to Table (F)",
        table_f_found,
        format!("{} quasigroup completions", forced_ba.quasigroup_completions),
    ));
    checks.push(check(
        "only x = b, y = a admits a completion",
        forced_ba.jordan_completions == 1
            && resolutions[1..].iter().all(|r| r.jordan_completions == 0),
        resolutions
            .iter()
            .map(|r| format!("(x={}, y={}): {}", r.x, r.y, r.jordan_completions))
            .collect::<Vec<_>>()
            .join(", "),
    ));

    let passed = all_passed(&checks);
    Ok(Exponent3Case {
        constraints,
        completions: completions.len(),
        iso_classes: forms.len(),
        associative_classes,
        matches_z3xz3,
        resolutions,
        checks,
        passed,
    })
}

/// The exponent-3 horn: Table (A) completes to `Z3×Z3` only.
pub fn certify_exponent3_case() -> Result<Exponent3Case> {
    let record = exponent3_case_record(EXPONENT3_CONSTRAINTS)?;
    first_failure("exponent-3 case", &record.checks)?;
    Ok(record)
}

// ---------------------------------------------------------------- case split

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub digest: String,
    pub cyclic: bool,
    /// Orders of `⟨x⟩` for `x ≠ e`, ascending.
    pub generated_orders: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSplit {
    pub order: usize,
    /// `⌊9/2⌋`
    pub size_bound: usize,
    /// Odd sizes up to the bound.
    pub odd_sizes: Vec<usize>,
    /// What remains for `⟨x⟩` with `x ≠ e` a non-generator.
    pub proper_options: Vec<usize>,
    pub corpus: Vec<CorpusEntry>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Size arithmetic for proper monogenic subloops at order 9, checked on a
/// corpus of order-9 Jordan loops.
pub fn certify_case_split(corpus: &[LoopTable]) -> CaseSplit {
    let order = 9;
    let size_bound = order / 2;
    let odd_sizes: Vec<usize> = (1..=size_bound).filter(|k| k % 2 == 1).collect();
    // ⟨x⟩ holds both e and x ≠ e
    let proper_options: Vec<usize> = odd_sizes.iter().copied().filter(|&k| k >= 2).collect();
    let mut checks = vec![
        check("size bound is 4", size_bound == 4, format!("{size_bound}")),
        check("only size 3 remains", proper_options == [3], format!("{proper_options:?}")),
    ];
    let mut entries = Vec::new();
    for q in corpus {
        let mut generated_orders: Vec<usize> =
            (1..q.order()).map(|x| monogenic_subloop(q, x).len()).collect();
        generated_orders.sort_unstable();
        let cyclic = generated_orders.contains(&q.order());
        let digest = format!("{:016x}", canonical_form(q).digest());
        let ok = q.order() == order
            && generated_orders.iter().all(|&k| k == order || proper_options.contains(&k));
        checks.push(check(
            &format!("non-generators generate size-3 subloops in {digest}"),
            ok,
            format!("{generated_orders:?}"),
        ));
        entries.push(CorpusEntry { digest, cyclic, generated_orders });
    }
    let passed = all_passed(&checks);
    CaseSplit { order, size_bound, odd_sizes, proper_options, corpus: entries, checks, passed }
}

// ------------------------------------------------------ supporting lemmas

/// Aggregate of one loop-level or per-element check over a corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaSummary {
    pub lemma: LemmaId,
    pub tables: usize,
    pub instances: u64,
    pub failures: usize,
    pub first_failure: Option<LemmaReport>,
}

/// Runs the parity, subloop-size and monogenic checks over `corpus`.
pub fn lemma_dependencies(corpus: &[LoopTable]) -> Vec<LemmaSummary> {
    let lemmas = [
        LemmaId::InvolutionParity,
        LemmaId::EvenSubloopParity,
        LemmaId::SquareRootParity,
        LemmaId::SubloopBound,
        LemmaId::MonogenicCyclic,
    ];
    lemmas
        .into_iter()
        .map(|lemma| {
            let mut s = LemmaSummary { lemma, tables: 0, instances: 0, failures: 0, first_failure: None };
            for q in corpus {
                let reports = match lemma {
                    LemmaId::InvolutionParity => vec![check_involution_parity(q)],
                    LemmaId::EvenSubloopParity => vec![check_even_subloop_parity(q)],
                    LemmaId::SquareRootParity => vec![check_square_root_parity(q)],
                    LemmaId::SubloopBound => vec![check_subloop_bound(q)],
                    _ => q.elements().map(|x| check_monogenic_lemma(q, x)).collect(),
                };
                s.tables += 1;
                for r in reports {
                    s.instances += r.checked_instances;
                    if r.status == Status::Fail {
                        s.failures += 1;
                        s.first_failure.get_or_insert(r);
                    }
                }
            }
            s
        })
        .collect()
}

/// Jordan loops of orders 2–8, one per isomorphism class.
pub fn small_jordan_corpus() -> Result<Vec<LoopTable>> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.extend(enumerate_loops(&SearchConfig::jordan(n))?.tables);
    }
    Ok(out)
}

// ------------------------------------------------------------- certificate

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveStage {
    pub iso_classes: usize,
    pub associative: usize,
    pub digests: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Order9Certificate {
    pub lemma_dependencies: Vec<LemmaSummary>,
    pub case_split: CaseSplit,
    pub cyclic_case: CyclicCase,
    pub exponent3_case: Exponent3Case,
    pub exhaustive: Option<ExhaustiveStage>,
    pub conclusion: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Also enumerate every Jordan loop of order 9.
    pub exhaustive: bool,
    /// Constraints for completing Table (A); weakening them must break the
    /// conclusion.
    pub exponent3_constraints: Constraints,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { exhaustive: false, exponent3_constraints: EXPONENT3_CONSTRAINTS }
    }
}

pub fn certify_order9(exhaustive: bool) -> Result<Order9Certificate> {
    certify_order9_with(CertifyOptions { exhaustive, ..CertifyOptions::default() })
}

/// Runs every stage and assembles the certificate. The conclusion holds only
/// if every stage passed. Errors come only from the engine itself.
pub fn certify_order9_with(opts: CertifyOptions) -> Result<Order9Certificate> {
    let lemma_dependencies = lemma_dependencies(&small_jordan_corpus()?);
    let cyclic_case = cyclic_case_record()?;
    let exponent3_case = exponent3_case_record(opts.exponent3_constraints)?;

    let mut corpus = vec![groups::cyclic(9), groups::z3xz3(), fixtures::table_f()];
    let exhaustive = if opts.exhaustive {
        let found = enumerate_loops(&SearchConfig::jordan(9))?.tables;
        let expected: BTreeSet<_> =
            [groups::cyclic(9), groups::z3xz3()].iter().map(canonical_form).collect();
        let got: BTreeSet<_> = found.iter().map(canonical_form).collect();
        let associative = found.iter().filter(|t| t.is_associative()).count();
        let checks = vec![
            check("exactly Z9 and Z3xZ3", got == expected, format!("{} classes", got.len())),
            check("all associative", associative == found.len(), format!("{associative}")),
        ];
        let digests = got.iter().map(|f| format!("{:016x}", f.digest())).collect();
        corpus.extend(found.iter().cloned());
        Some(ExhaustiveStage {
            iso_classes: found.len(),
            associative,
            digests,
            passed: all_passed(&checks),
            checks,
        })
    } else {
        None
    };
    corpus.sort_by_cached_key(canonical_form);
    corpus.dedup_by(|a, b| canonical_form(a) == canonical_form(b));
    let case_split = certify_case_split(&corpus);

    let conclusion = lemma_dependencies.iter().all(|s| s.failures == 0)
        && case_split.passed
        && cyclic_case.passed
        && exponent3_case.passed
        && exhaustive.as_ref().map_or(true, |e| e.passed);
    Ok(Order9Certificate { lemma_dependencies, case_split, cyclic_case, exponent3_case, exhaustive, conclusion })
}

impl Order9Certificate {
    /// The first failed stage as an error, if any.
    pub fn require(&self) -> Result<()> {
        if let Some(s) = self.lemma_dependencies.iter().find(|s| s.failures > 0) {
            return Err(Error::CertificationFailed {
                stage: "lemma dependencies".into(),
                detail: format!("{} failed {} times", s.lemma, s.failures),
            });
        }
        first_failure("case split", &self.case_split.checks)?;
        first_failure("cyclic case", &self.cyclic_case.checks)?;
        first_failure("exponent-3 case", &self.exponent3_case.checks)?;
        if let Some(e) = &self.exhaustive {
            first_failure("exhaustive", &e.checks)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("order-9 Jordan loop certificate\n");
        let mark = |ok: bool| if ok { "ok  " } else { "FAIL" };
        let section = |out: &mut String, title: &str, checks: &[Check]| {
            out.push_str(&format!("\n[{}] {title}\n", mark(all_passed(checks))));
            for c in checks {
                out.push_str(&format!("  {} {} ({})\n", mark(c.passed), c.name, c.detail));
            }
        };

        let deps_ok = self.lemma_dependencies.iter().all(|s| s.failures == 0);
        out.push_str(&format!("\n[{}] supporting lemmas over Jordan loops of order 2-8\n", mark(deps_ok)));
        for s in &self.lemma_dependencies {
            out.push_str(&format!(
                "  {} {} tables={} instances={} failures={}\n",
                mark(s.failures == 0),
                s.lemma,
                s.tables,
                s.instances,
                s.failures
            ));
        }

        let cs = &self.case_split;
        section(&mut out, "case split: cyclic or exponent 3", &cs.checks);
        out.push_str(&format!(
            "  proper subloop sizes <= {}, odd: {:?}, for x != e: {:?}\n",
            cs.size_bound, cs.odd_sizes, cs.proper_options
        ));

        let cy = &self.cyclic_case;
        section(&mut out, "cyclic case", &cy.checks);
        out.push_str(&format!(
            "  {} generated cells, x^3 x^3 candidates {:?}\n",
            cy.generated.len(),
            cy.pivot_candidates
        ));
        for b in &cy.branches {
            out.push_str(&format!(
                "  x^3 x^3 = x^{}: {} completions, {} associative, {} isomorphic to Z9\n",
                b.value, b.completions, b.associative, b.isomorphic_to_z9
            ));
        }

        let ex = &self.exponent3_case;
        section(&mut out, "exponent-3 case", &ex.checks);
        out.push_str(&format!(
            "  {} completions, {} isomorphism classes, Z3xZ3: {}\n",
            ex.completions, ex.iso_classes, ex.matches_z3xz3
        ));
        for r in &ex.resolutions {
            out.push_str(&format!(
                "  x = {}, y = {}: {} quasigroup completions (Table (E) pattern: {}), {} Jordan\n",
                r.x, r.y, r.quasigroup_completions, r.matches_table_e, r.jordan_completions
            ));
        }

        if let Some(e) = &self.exhaustive {
            section(&mut out, "exhaustive enumeration of order 9", &e.checks);
            out.push_str(&format!("  classes: {}\n", e.digests.join(", ")));
        }

        out.push_str(&format!(
            "\nconclusion: {}\n",
            if self.conclusion {
                "every Jordan loop of order 9 is a group"
            } else {
                "NOT established"
            }
        ));
        out
    }
}
