//! Checkable power and inverse identities for Jordan loops.
//!
//! Every power `x^k` is the right-associated term; `x^{-k}` is `(x^{-1})^k`.
//! Each check tallies the instances it evaluated and keeps the first failing
//! one as a witness. A check whose hypothesis held for no instance reports
//! [`Status::NotApplicable`] rather than a vacuous pass.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::power::{binary_power, bracket_sets, default_max_exp, rpow};
use crate::subloop::{
    all_subloops, has_nontrivial_involution, monogenic_subloop, square_root_map,
    DEFAULT_SUBLOOP_BOUND,
};
use crate::table::{ElementId, LoopTable, IDENTITY};

/// Identifier of one checked statement. Declaration order is report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    /// `x²(yx) = (x²y)x`
    Jordan,
    /// `x³`, `x⁴`, `x⁵` are well defined.
    SmallPowers,
    /// `xⁿx² = xⁿ⁺²`
    MulSquare,
    /// `xⁿx⁴ = xⁿ⁺⁴`
    MulFourth,
    /// `xⁿx⁸ = xⁿ⁺⁸` for `n ≢ 3 (mod 4)`
    MulEighth,
    /// `xⁿx⁸ = xⁿ⁺⁸` for `n ≡ 3 (mod 4)`, given `x³x⁸ = x¹¹`
    MulEighthConditional,
    /// `xⁿx^{2^k} = x^{n+2^k}` when `n ≡ 2^m (mod 2^{k−1})` for some `m < k`
    MulPowerOfTwo,
    /// `x^{2^k} = (x^{2^{k−1}})²`
    SquareOfPowerOfTwo,
    /// `xⁿ` equals the right-nested product over the binary digits of `n`.
    BinaryExpansion,
    /// `x²x⁻¹ = x`
    SquareTimesInverse,
    /// `x⁴x⁻¹ = x³`
    FourthTimesInverse,
    /// `x⁸x⁻¹ = x⁷`, given `x³x⁸ = x¹¹`
    EighthTimesInverse,
    /// `(x^{2^k})⁻¹ = (x⁻¹)^{2^k}`
    InverseOfPowerOfTwo,
    /// `(x²)⁻¹x = x⁻¹`
    InverseSquareTimesX,
    /// `x³x⁻² = x`
    CubeTimesInverseSquare,
    /// `x³x⁻¹ = x²`
    CubeTimesInverse,
    /// `x⁴(x⁻¹)³ = x`
    FourthTimesInverseCube,
    /// `x⁶x⁻² = x⁴`
    SixthTimesInverseSquare,
    /// `(x²)³(x²)⁻¹ = (x²)²`
    SixthTimesInverseSquareViaSquare,
    /// `x⁶x⁻⁴ = x²`
    SixthTimesInverseFourth,
    /// `(x²)³(x²)⁻² = x²`
    SixthTimesInverseFourthViaSquare,
    /// If `x³x³ = x⁶` then `x⁶`, `x⁷`, `x⁸` are well defined and `x⁶x⁻¹ = x⁵`.
    CubeSquared,
    /// A nontrivial involution exists iff the order is even.
    InvolutionParity,
    /// An even-ordered subloop exists iff the order is even.
    EvenSubloopParity,
    /// Squaring is invertible iff the order is odd.
    SquareRootParity,
    /// Proper subloops have at most `⌊n/2⌋` elements.
    SubloopBound,
    /// If `x^m` is well defined for `m < n` then `⟨x⟩` is cyclic of order
    /// `k`, and `k = n` when `k > ⌊n/2⌋`.
    MonogenicCyclic,
}

impl LemmaId {
    pub const ALL: [LemmaId; 27] = [
        LemmaId::Jordan,
        LemmaId::SmallPowers,
        LemmaId::MulSquare,
        LemmaId::MulFourth,
        LemmaId::MulEighth,
        LemmaId::MulEighthConditional,
        LemmaId::MulPowerOfTwo,
        LemmaId::SquareOfPowerOfTwo,
        LemmaId::BinaryExpansion,
        LemmaId::SquareTimesInverse,
        LemmaId::FourthTimesInverse,
        LemmaId::EighthTimesInverse,
        LemmaId::InverseOfPowerOfTwo,
        LemmaId::InverseSquareTimesX,
        LemmaId::CubeTimesInverseSquare,
        LemmaId::CubeTimesInverse,
        LemmaId::FourthTimesInverseCube,
        LemmaId::SixthTimesInverseSquare,
        LemmaId::SixthTimesInverseSquareViaSquare,
        LemmaId::SixthTimesInverseFourth,
        LemmaId::SixthTimesInverseFourthViaSquare,
        LemmaId::CubeSquared,
        LemmaId::InvolutionParity,
        LemmaId::EvenSubloopParity,
        LemmaId::SquareRootParity,
        LemmaId::SubloopBound,
        LemmaId::MonogenicCyclic,
    ];

    /// Stable identifier used in text and JSON reports.
    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Jordan => "jordan",
            LemmaId::SmallPowers => "small_powers",
            LemmaId::MulSquare => "mul_x2",
            LemmaId::MulFourth => "mul_x4",
            LemmaId::MulEighth => "mul_x8",
            LemmaId::MulEighthConditional => "mul_x8_given_x3x8",
            LemmaId::MulPowerOfTwo => "mul_x2k",
            LemmaId::SquareOfPowerOfTwo => "square_x2k",
            LemmaId::BinaryExpansion => "binary_expansion",
            LemmaId::SquareTimesInverse => "x2_inv1",
            LemmaId::FourthTimesInverse => "x4_inv1",
            LemmaId::EighthTimesInverse => "x8_inv1_given_x3x8",
            LemmaId::InverseOfPowerOfTwo => "inv_x2k",
            LemmaId::InverseSquareTimesX => "inv_x2_mul_x",
            LemmaId::CubeTimesInverseSquare => "x3_inv2",
            LemmaId::CubeTimesInverse => "x3_inv1",
            LemmaId::FourthTimesInverseCube => "x4_inv3",
            LemmaId::SixthTimesInverseSquare => "x6_inv2",
            LemmaId::SixthTimesInverseSquareViaSquare => "x6_inv2_via_x2",
            LemmaId::SixthTimesInverseFourth => "x6_inv4",
            LemmaId::SixthTimesInverseFourthViaSquare => "x6_inv4_via_x2",
            LemmaId::CubeSquared => "cube_squared",
            LemmaId::InvolutionParity => "involution_parity",
            LemmaId::EvenSubloopParity => "even_subloop_parity",
            LemmaId::SquareRootParity => "square_root_parity",
            LemmaId::SubloopBound => "subloop_bound",
            LemmaId::MonogenicCyclic => "monogenic_cyclic",
        }
    }

    pub fn from_name(name: &str) -> Option<LemmaId> {
        LemmaId::ALL.into_iter().find(|l| l.name() == name)
    }
}

impl std::fmt::Display for LemmaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for LemmaId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        })
    }
}

/// The first failing instance of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub element: Option<ElementId>,
    /// Second element for two-variable statements (`y` in the Jordan identity).
    pub other: Option<ElementId>,
    pub exponents: Vec<i64>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    /// `None` for statements about the whole loop.
    pub element: Option<ElementId>,
    pub status: Status,
    pub witness: Option<Witness>,
    pub checked_instances: u64,
}

impl LemmaReport {
    fn not_applicable(lemma: LemmaId, element: Option<ElementId>) -> Self {
        LemmaReport { lemma, element, status: Status::NotApplicable, witness: None, checked_instances: 0 }
    }

    /// One line: `lemma element status instances [witness]`.
    pub fn to_line(&self) -> String {
        let element = self.element.map_or_else(|| "-".to_string(), |e| e.to_string());
        let mut line =
            format!("{} {} {} {}", self.lemma, element, self.status, self.checked_instances);
        if let Some(w) = &self.witness {
            let exps: Vec<String> = w.exponents.iter().map(|e| e.to_string()).collect();
            line.push_str(&format!(" witness x={}", w.element.map_or("-".into(), |e| e.to_string())));
            if let Some(y) = w.other {
                line.push_str(&format!(" y={y}"));
            }
            line.push_str(&format!(" exps=[{}] lhs={} rhs={}", exps.join(","), w.lhs, w.rhs));
        }
        line
    }
}

/// Renders reports as a JSON array.
pub fn reports_to_json(reports: &[LemmaReport]) -> serde_json::Value {
    serde_json::to_value(reports).expect("reports serialize")
}

struct Tally {
    lemma: LemmaId,
    element: Option<ElementId>,
    instances: u64,
    witness: Option<Witness>,
}

impl Tally {
    fn new(lemma: LemmaId, element: Option<ElementId>) -> Self {
        Tally { lemma, element, instances: 0, witness: None }
    }

    fn check(&mut self, exponents: &[i64], lhs: usize, rhs: usize) {
        self.check_pair(None, exponents, lhs, rhs);
    }

    fn check_pair(&mut self, other: Option<ElementId>, exponents: &[i64], lhs: usize, rhs: usize) {
        self.instances += 1;
        if lhs != rhs && self.witness.is_none() {
            self.witness = Some(Witness {
                element: self.element,
                other,
                exponents: exponents.to_vec(),
                lhs,
                rhs,
            });
        }
    }

    fn finish(self) -> LemmaReport {
        let status = match (&self.witness, self.instances) {
            (Some(_), _) => Status::Fail,
            (None, 0) => Status::NotApplicable,
            (None, _) => Status::Pass,
        };
        LemmaReport {
            lemma: self.lemma,
            element: self.element,
            status,
            witness: self.witness,
            checked_instances: self.instances,
        }
    }
}

fn require_jordan(q: &LoopTable) -> Result<()> {
    if let Some((x, y)) = q.commutativity_witness() {
        return Err(Error::NotCommutative { x, y });
    }
    if let Some((x, y)) = q.jordan_witness() {
        return Err(Error::NotJordan { x, y });
    }
    Ok(())
}

/// Right-associated powers `x^0 ..= x^max`.
fn powers(q: &LoopTable, x: ElementId, max: usize) -> Vec<ElementId> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = IDENTITY;
    out.push(acc);
    for _ in 0..max {
        acc = q.mul(x, acc);
        out.push(acc);
    }
    out
}

/// `x²(yx) = (x²y)x` over all pairs.
pub fn check_jordan_pairs(q: &LoopTable) -> Result<LemmaReport> {
    if let Some((x, y)) = q.commutativity_witness() {
        return Err(Error::NotCommutative { x, y });
    }
    let mut t = Tally::new(LemmaId::Jordan, None);
    for x in q.elements() {
        let sq = q.square(x);
        for y in q.elements() {
            let lhs = q.mul(sq, q.mul(y, x));
            let rhs = q.mul(q.mul(sq, y), x);
            if lhs != rhs && t.witness.is_none() {
                t.witness = Some(Witness { element: Some(x), other: Some(y), exponents: vec![], lhs, rhs });
            }
            t.instances += 1;
        }
    }
    Ok(t.finish())
}

/// Well-definedness of `x³`, `x⁴`, `x⁵` by bracketing sets.
pub fn check_small_powers(q: &LoopTable, x: ElementId) -> Result<LemmaReport> {
    require_jordan(q)?;
    let p = bracket_sets(q, x, 5);
    let mut t = Tally::new(LemmaId::SmallPowers, Some(x));
    for k in 3..=5 {
        t.check(&[k as i64], p.bracket_sets[k].len(), 1);
    }
    Ok(t.finish())
}

/// The additive power identities with `x²`, `x⁴`, `x⁸`, `x^{2^k}` and the
/// squaring of powers of two, for exponents up to `max_n`.
pub fn check_power2(q: &LoopTable, x: ElementId, max_n: usize) -> Result<Vec<LemmaReport>> {
    require_jordan(q)?;
    let pw = powers(q, x, max_n + 8);
    let el = Some(x);

    let mut add2 = Tally::new(LemmaId::MulSquare, el);
    let mut add4 = Tally::new(LemmaId::MulFourth, el);
    let mut add8 = Tally::new(LemmaId::MulEighth, el);
    let mut add8c = Tally::new(LemmaId::MulEighthConditional, el);
    let hypothesis = q.mul(pw[3], pw[8]) == pw[11];
    for n in 0..=max_n {
        let ni = n as i64;
        add2.check(&[ni, 2], q.mul(pw[n], pw[2]), pw[n + 2]);
        add4.check(&[ni, 4], q.mul(pw[n], pw[4]), pw[n + 4]);
        if n % 4 != 3 {
            add8.check(&[ni, 8], q.mul(pw[n], pw[8]), pw[n + 8]);
        } else if hypothesis {
            add8c.check(&[ni, 8], q.mul(pw[n], pw[8]), pw[n + 8]);
        }
    }

    let mut add2k = Tally::new(LemmaId::MulPowerOfTwo, el);
    let mut k = 1;
    while 1usize << k <= max_n {
        let step = 1usize << k;
        let modulus = 1usize << (k - 1);
        for n in 0..=max_n - step {
            let applies = (0..k).any(|m| n % modulus == (1usize << m) % modulus);
            if applies {
                add2k.check(&[n as i64, step as i64], q.mul(pw[n], pw[step]), pw[n + step]);
            }
        }
        k += 1;
    }

    let mut sq2k = Tally::new(LemmaId::SquareOfPowerOfTwo, el);
    let mut k = 1;
    while 1usize << k <= max_n {
        let half = pw[1 << (k - 1)];
        sq2k.check(&[1 << k], pw[1 << k], q.mul(half, half));
        k += 1;
    }

    Ok(vec![
        add2.finish(),
        add4.finish(),
        add8.finish(),
        add8c.finish(),
        add2k.finish(),
        sq2k.finish(),
    ])
}

/// `xⁿ` against `x^{a_0}(x^{2a_1}(⋯(x^{2^k a_k})))` for a single `n`.
pub fn check_binary_expansion(q: &LoopTable, x: ElementId, n: u64) -> Result<LemmaReport> {
    require_jordan(q)?;
    let mut t = Tally::new(LemmaId::BinaryExpansion, Some(x));
    binary_instance(q, x, n, &mut t);
    Ok(t.finish())
}

fn binary_instance(q: &LoopTable, x: ElementId, n: u64, t: &mut Tally) {
    t.check(&[n as i64], binary_power(q, x, n), rpow(q, x, n as i64));
}

/// `x²x⁻¹ = x`, `x⁴x⁻¹ = x³`, and `x⁸x⁻¹ = x⁷` when `x³x⁸ = x¹¹`.
pub fn check_inverse_identities(q: &LoopTable, x: ElementId) -> Result<Vec<LemmaReport>> {
    require_jordan(q)?;
    let pw = powers(q, x, 11);
    let inv = q.inverse(x);
    let el = Some(x);
    let mut i = Tally::new(LemmaId::SquareTimesInverse, el);
    i.check(&[2, -1], q.mul(pw[2], inv), x);
    let mut ii = Tally::new(LemmaId::FourthTimesInverse, el);
    ii.check(&[4, -1], q.mul(pw[4], inv), pw[3]);
    let mut iii = Tally::new(LemmaId::EighthTimesInverse, el);
    if q.mul(pw[3], pw[8]) == pw[11] {
        iii.check(&[8, -1], q.mul(pw[8], inv), pw[7]);
    }
    Ok(vec![i.finish(), ii.finish(), iii.finish()])
}

/// `(x^{2^k})⁻¹ = (x⁻¹)^{2^k}` for `0 ≤ k ≤ max_k`.
pub fn check_inverse_power2(q: &LoopTable, x: ElementId, max_k: u32) -> Result<LemmaReport> {
    require_jordan(q)?;
    let inv = q.inverse(x);
    let mut t = Tally::new(LemmaId::InverseOfPowerOfTwo, Some(x));
    for k in 0..=max_k {
        let e = 1i64 << k;
        t.check(&[e, -1], q.inverse(rpow(q, x, e)), rpow(q, inv, e));
    }
    Ok(t.finish())
}

/// The mixed power/inverse identities, including the two readings of the
/// sixth-power statements: right-associated `x⁶` and `(x²)³`.
pub fn check_identities2(q: &LoopTable, x: ElementId) -> Result<Vec<LemmaReport>> {
    require_jordan(q)?;
    let p = |k: i64| rpow(q, x, k);
    let el = Some(x);
    let mut reports = Vec::with_capacity(8);

    let mut t = Tally::new(LemmaId::InverseSquareTimesX, el);
    t.check(&[2, 1], q.mul(q.inverse(p(2)), x), q.inverse(x));
    reports.push(t.finish());

    let mut t = Tally::new(LemmaId::CubeTimesInverseSquare, el);
    t.check(&[3, -2], q.mul(p(3), p(-2)), x);
    reports.push(t.finish());

    let mut t = Tally::new(LemmaId::CubeTimesInverse, el);
    t.check(&[3, -1], q.mul(p(3), p(-1)), p(2));
    reports.push(t.finish());

    let mut t = Tally::new(LemmaId::FourthTimesInverseCube, el);
    t.check(&[4, -3], q.mul(p(4), p(-3)), x);
    reports.push(t.finish());

    let sq = p(2);
    let s = |k: i64| rpow(q, sq, k);

    let mut t = Tally::new(LemmaId::SixthTimesInverseSquare, el);
    t.check(&[6, -2], q.mul(p(6), p(-2)), p(4));
    reports.push(t.finish());

    let mut t = Tally::new(LemmaId::SixthTimesInverseSquareViaSquare, el);
    t.check(&[6, -2], q.mul(s(3), s(-1)), s(2));
    reports.push(t.finish());

    let mut t = Tally::new(LemmaId::SixthTimesInverseFourth, el);
    t.check(&[6, -4], q.mul(p(6), p(-4)), p(2));
    reports.push(t.finish());

    let mut t = Tally::new(LemmaId::SixthTimesInverseFourthViaSquare, el);
    t.check(&[6, -4], q.mul(s(3), s(-2)), sq);
    reports.push(t.finish());

    Ok(reports)
}

/// When `x³x³ = x⁶`: `x⁶`, `x⁷`, `x⁸` are well defined and `x⁶x⁻¹ = x⁵`.
pub fn check_8welldefined(q: &LoopTable, x: ElementId) -> Result<LemmaReport> {
    require_jordan(q)?;
    let p = bracket_sets(q, x, 8);
    let mut t = Tally::new(LemmaId::CubeSquared, Some(x));
    if q.mul(p.rpow(3), p.rpow(3)) == p.rpow(6) {
        for k in 6..=8 {
            t.check(&[k as i64], p.bracket_sets[k].len(), 1);
        }
        t.check(&[6, -1], q.mul(p.rpow(6), p.inverse), p.rpow(5));
    }
    Ok(t.finish())
}

/// When `x^m` is well defined for all `1 ≤ m ≤ n−1`, `⟨x⟩` must be a cyclic
/// group of some order `k`, with `k = n` whenever `k > ⌊n/2⌋`.
pub fn check_monogenic_lemma(q: &LoopTable, x: ElementId) -> LemmaReport {
    let n = q.order();
    let mut t = Tally::new(LemmaId::MonogenicCyclic, Some(x));
    let profile = bracket_sets(q, x, (n - 1).max(1));
    if !profile.well_defined_through(n - 1) {
        return t.finish();
    }
    let sub = monogenic_subloop(q, x);
    let k = sub.len();
    let table = sub.to_table(q);
    t.check(&[], table.is_associative() as usize, 1);
    t.check(&[], table.is_commutative() as usize, 1);
    // cyclic: x^0 .. x^{k-1} are distinct and x^k = e
    let pw = powers(q, x, k);
    let mut distinct = pw[..k].to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    t.check(&[k as i64], distinct.len(), k);
    t.check(&[k as i64], pw[k], IDENTITY);
    if k > n / 2 {
        t.check(&[], k, n);
    }
    t.finish()
}

/// Nontrivial involutions exist iff the order is even.
pub fn check_involution_parity(q: &LoopTable) -> LemmaReport {
    let mut t = Tally::new(LemmaId::InvolutionParity, None);
    t.check(&[], has_nontrivial_involution(q) as usize, (q.order() % 2 == 0) as usize);
    t.finish()
}

/// Even-ordered subloops exist iff the order is even.
pub fn check_even_subloop_parity(q: &LoopTable) -> LemmaReport {
    let mut t = Tally::new(LemmaId::EvenSubloopParity, None);
    if let Ok(subs) = all_subloops(q, DEFAULT_SUBLOOP_BOUND) {
        let has_even = subs.iter().any(|s| s.len() % 2 == 0);
        t.check(&[], has_even as usize, (q.order() % 2 == 0) as usize);
    }
    t.finish()
}

/// Squaring is a bijection iff the order is odd.
pub fn check_square_root_parity(q: &LoopTable) -> LemmaReport {
    let mut t = Tally::new(LemmaId::SquareRootParity, None);
    t.check(&[], square_root_map(q).is_ok() as usize, (q.order() % 2 == 1) as usize);
    t.finish()
}

/// Every proper subloop has at most `⌊n/2⌋` elements.
pub fn check_subloop_bound(q: &LoopTable) -> LemmaReport {
    let n = q.order();
    let mut t = Tally::new(LemmaId::SubloopBound, None);
    if let Ok(subs) = all_subloops(q, DEFAULT_SUBLOOP_BOUND) {
        for s in subs.iter().filter(|s| s.len() < n) {
            t.instances += 1;
            if s.len() > n / 2 && t.witness.is_none() {
                // lhs: offending subloop order, rhs: the bound
                t.witness = Some(Witness {
                    element: s.generator(),
                    other: None,
                    exponents: vec![],
                    lhs: s.len(),
                    rhs: n / 2,
                });
            }
        }
    }
    t.finish()
}

/// Runs every check on every element. Fails only when `q` is not
/// commutative; on a commutative non-Jordan loop the Jordan report fails and
/// the checks that presuppose the identity are reported not applicable.
pub fn run_full_suite(q: &LoopTable, max_n: usize) -> Result<Vec<LemmaReport>> {
    let mut reports = vec![check_jordan_pairs(q)?];
    let jordan = reports[0].status == Status::Pass;
    let max_k = (usize::BITS - 1 - max_n.max(1).leading_zeros()) as u32;
    for x in q.elements() {
        let el = Some(x);
        if jordan {
            reports.push(check_small_powers(q, x)?);
            reports.extend(check_power2(q, x, max_n)?);
            let mut bin = Tally::new(LemmaId::BinaryExpansion, el);
            for n in 1..=max_n as u64 {
                binary_instance(q, x, n, &mut bin);
            }
            reports.push(bin.finish());
            reports.extend(check_inverse_identities(q, x)?);
            reports.push(check_inverse_power2(q, x, max_k)?);
            reports.extend(check_identities2(q, x)?);
            reports.push(check_8welldefined(q, x)?);
        } else {
            for lemma in LemmaId::ALL {
                if lemma > LemmaId::Jordan && lemma < LemmaId::InvolutionParity {
                    reports.push(LemmaReport::not_applicable(lemma, el));
                }
            }
        }
        reports.push(check_monogenic_lemma(q, x));
    }
    reports.push(check_involution_parity(q));
    reports.push(check_even_subloop_parity(q));
    reports.push(check_square_root_parity(q));
    reports.push(check_subloop_bound(q));
    reports.sort_by(|a, b| a.lemma.cmp(&b.lemma).then(a.element.cmp(&b.element)));
    Ok(reports)
}

/// Suite with the default exponent horizon `2n + 8`.
pub fn run_default_suite(q: &LoopTable) -> Result<Vec<LemmaReport>> {
    run_full_suite(q, default_max_exp(q.order()))
}

pub fn any_failure(reports: &[LemmaReport]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    #[test]
    fn abelian_groups_pass_everything() {
        for n in 1..=9 {
            for g in groups::abelian_groups(n) {
                let reports = run_default_suite(&g).unwrap();
                assert!(!any_failure(&reports), "order {n}");
                for r in &reports {
                    if r.lemma == LemmaId::Jordan {
                        assert_eq!(r.checked_instances, (n * n) as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn noncommutative_is_rejected() {
        assert!(matches!(
            run_default_suite(&groups::symmetric3()),
            Err(Error::NotCommutative { .. })
        ));
    }

    #[test]
    fn not_applicable_is_not_pass() {
        let z = groups::cyclic(3);
        let r = check_8welldefined(&z, 1).unwrap();
        // 1³ = 0 in Z3 so the hypothesis holds: 0·0 = 0 = x⁶
        assert_eq!(r.status, Status::Pass);
        let mut t = Tally::new(LemmaId::CubeSquared, Some(1));
        t.instances = 0;
        assert_eq!(t.finish().status, Status::NotApplicable);
    }

    #[test]
    fn report_lines_are_stable() {
        let reports = run_default_suite(&groups::cyclic(3)).unwrap();
        assert_eq!(reports[0].to_line(), "jordan - pass 9");
        assert!(reports.windows(2).all(|w| (w[0].lemma, w[0].element) <= (w[1].lemma, w[1].element)));
        for id in LemmaId::ALL {
            assert_eq!(LemmaId::from_name(id.name()), Some(id));
        }
    }
}
