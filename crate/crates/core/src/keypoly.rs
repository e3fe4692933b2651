//! The key-polynomial calculus: the level invariant, truncations, key
//! certification, the alpha/psi search, limit-key classification and the
//! complete-set construction.
//!
//! Key certification is three-valued. The definition quantifies over all of
//! K[x], which no finite procedure decides, so certificates come from the
//! sufficient conditions (linearity, psi-membership, the K1-K4
//! characterization) and refutations from bounded witness searches; anything
//! else is an honest `Unknown`.

use std::fmt;

use crate::field::{GridSpec, ValuedField};
use crate::pcs::{PcsError, PcsGenerator};
use crate::poly::{Poly, PolyError};
use crate::value::ExtValue;
use crate::xval::{AugmentedValuation, EvalError, KeyCertKind, XValuation, XvalError};

#[derive(Clone, Debug)]
pub enum KeyPolyError {
    /// The level is undefined for constants.
    ConstantInput,
    /// Keys and expansion bases must be monic of degree >= 1.
    NotMonic,
    InvalidAugmentation { reason: String },
    /// A construction required a key, but certification found a refutation.
    KeyRefuted { key: String, witness: String },
    BudgetExhausted,
    Eval(EvalError),
    Poly(PolyError),
    Pcs(PcsError),
    Xval(XvalError),
}

impl fmt::Display for KeyPolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyPolyError::ConstantInput => write!(f, "level undefined for constants"),
            KeyPolyError::NotMonic => write!(f, "polynomial must be monic of degree >= 1"),
            KeyPolyError::InvalidAugmentation { reason } => {
                write!(f, "invalid augmentation: {reason}")
            }
            KeyPolyError::KeyRefuted { key, witness } => {
                write!(f, "{key} is not a key polynomial (witness {witness})")
            }
            KeyPolyError::BudgetExhausted => write!(f, "search budget exhausted"),
            KeyPolyError::Eval(e) => write!(f, "{e}"),
            KeyPolyError::Poly(e) => write!(f, "{e}"),
            KeyPolyError::Pcs(e) => write!(f, "{e}"),
            KeyPolyError::Xval(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for KeyPolyError {}

impl From<EvalError> for KeyPolyError {
    fn from(e: EvalError) -> Self {
        KeyPolyError::Eval(e)
    }
}

impl From<PolyError> for KeyPolyError {
    fn from(e: PolyError) -> Self {
        KeyPolyError::Poly(e)
    }
}

impl From<PcsError> for KeyPolyError {
    fn from(e: PcsError) -> Self {
        KeyPolyError::Pcs(e)
    }
}

impl From<XvalError> for KeyPolyError {
    fn from(e: XvalError) -> Self {
        KeyPolyError::Xval(e)
    }
}

/// Search knobs shared by the bounded operations.
#[derive(Clone, Debug)]
pub struct SearchParams {
    pub degree_bound: usize,
    pub grid: GridSpec,
    pub window: usize,
    pub budget: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            degree_bound: 3,
            grid: GridSpec::default(),
            window: 8,
            budget: 20_000,
        }
    }
}

// ---------------------------------------------------------------------------
// The level invariant

/// One row per derivative order: the value of `d_b f` and the ratio
/// `(v(f) - v(d_b f)) / b` (absent when either value is infinite).
#[derive(Clone, Debug)]
pub struct EpsilonRow {
    pub b: usize,
    pub derivative_value: ExtValue,
    pub ratio: Option<ExtValue>,
}

/// The level of f: the maximal ratio, the attaining set I(f) and its
/// minimum b(f). When v(f) = inf the maximum formula is vacuous: the level
/// is inf and I(f) is empty.
#[derive(Clone, Debug)]
pub struct EpsilonReport {
    pub value: ExtValue,
    pub nu_f: ExtValue,
    pub attaining: Vec<usize>,
    pub b_min: Option<usize>,
    pub table: Vec<EpsilonRow>,
}

pub fn epsilon<F: ValuedField>(
    v: &XValuation<F>,
    f: &Poly<F>,
) -> Result<EpsilonReport, KeyPolyError> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Err(KeyPolyError::ConstantInput);
    }
    let nu_f = v.eval(f)?;
    let mut table = Vec::new();
    let mut best: Option<ExtValue> = None;
    for b in 1..=deg {
        let df = f.hasse_derivative(b);
        if df.is_zero() {
            continue;
        }
        let dval = v.eval(&df)?;
        let ratio = match (&nu_f, &dval) {
            (ExtValue::Finite(n), ExtValue::Finite(d)) => Some(ExtValue::Finite(n - d).div_nat(b)),
            // v(d_b f) = inf with v(f) finite: the ratio is -inf, never the
            // max; v(f) = inf makes the formula vacuous.
            _ => None,
        };
        if let Some(r) = &ratio {
            best = Some(match best {
                None => r.clone(),
                Some(m) => m.max(r.clone()),
            });
        }
        table.push(EpsilonRow {
            b,
            derivative_value: dval,
            ratio,
        });
    }
    let (value, attaining) = if nu_f.is_infinite() {
        (ExtValue::Infinite, vec![])
    } else {
        let best = best.expect("the top derivative of f is a nonzero constant");
        let attaining: Vec<usize> = table
            .iter()
            .filter(|row| row.ratio.as_ref() == Some(&best))
            .map(|row| row.b)
            .collect();
        (best, attaining)
    };
    let b_min = attaining.first().copied();
    Ok(EpsilonReport {
        value,
        nu_f,
        attaining,
        b_min,
        table,
    })
}

// ---------------------------------------------------------------------------
// Truncations

fn require_monic_base<F: ValuedField>(q: &Poly<F>) -> Result<(), KeyPolyError> {
    if q.degree().unwrap_or(0) < 1 {
        return Err(KeyPolyError::Poly(PolyError::ConstantBase));
    }
    if !q.is_monic() {
        return Err(KeyPolyError::Poly(PolyError::NonMonicBase));
    }
    Ok(())
}

/// The q-truncation `v_q(f) = min_i v(f_i q^i)` over the q-standard
/// expansion.
pub fn truncate<F: ValuedField>(
    v: &XValuation<F>,
    q: &Poly<F>,
    f: &Poly<F>,
) -> Result<ExtValue, KeyPolyError> {
    require_monic_base(q)?;
    if f.is_zero() {
        return Ok(ExtValue::Infinite);
    }
    let digits = f.q_expansion(q)?;
    let nu_q = v.eval(q)?;
    let mut best = ExtValue::Infinite;
    for (i, d) in digits.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        best = best.min(v.eval(d)? + nu_q.scale(i));
    }
    Ok(best)
}

/// The attaining set of the truncation minimum and its maximum delta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub indices: Vec<usize>,
    pub delta: usize,
    pub value: ExtValue,
}

pub fn support_set<F: ValuedField>(
    v: &XValuation<F>,
    q: &Poly<F>,
    f: &Poly<F>,
) -> Result<SupportSet, KeyPolyError> {
    require_monic_base(q)?;
    if f.is_zero() {
        return Ok(SupportSet {
            indices: vec![0],
            delta: 0,
            value: ExtValue::Infinite,
        });
    }
    let digits = f.q_expansion(q)?;
    let nu_q = v.eval(q)?;
    let mut rows = Vec::new();
    let mut best = ExtValue::Infinite;
    for (i, d) in digits.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let t = v.eval(d)? + nu_q.scale(i);
        best = best.clone().min(t.clone());
        rows.push((i, t));
    }
    let indices: Vec<usize> = rows
        .iter()
        .filter(|(_, t)| *t == best)
        .map(|(i, _)| *i)
        .collect();
    let delta = *indices.last().expect("nonzero f has a nonempty support");
    Ok(SupportSet {
        indices,
        delta,
        value: best,
    })
}

// ---------------------------------------------------------------------------
// Key certification

#[derive(Clone, Debug)]
pub enum CertReason<F: ValuedField> {
    /// Every monic linear polynomial is a key.
    Linear,
    /// Member of Psi(q_minus) for a certified key q_minus.
    PsiMember { q_minus: Poly<F> },
    /// Certified through the K1-K4 characterization.
    LimitWitness(Box<LimitReport<F>>),
}

impl<F: ValuedField> CertReason<F> {
    pub fn kind(&self) -> KeyCertKind {
        match self {
            CertReason::Linear => KeyCertKind::Linear,
            CertReason::PsiMember { .. } => KeyCertKind::PsiMember,
            CertReason::LimitWitness(_) => KeyCertKind::LimitWitness,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FalsifyWitness<F: ValuedField> {
    pub witness: Poly<F>,
    pub witness_level: ExtValue,
    pub level: ExtValue,
}

#[derive(Clone, Debug)]
pub enum KeyStatus<F: ValuedField> {
    Certified(CertReason<F>),
    Falsified(FalsifyWitness<F>),
    Unknown { candidates_tried: u64 },
}

impl<F: ValuedField> KeyStatus<F> {
    pub fn is_certified(&self) -> bool {
        matches!(self, KeyStatus::Certified(_))
    }

    pub fn kind(&self) -> Option<KeyCertKind> {
        match self {
            KeyStatus::Certified(r) => Some(r.kind()),
            _ => None,
        }
    }
}

/// Monic grid polynomials of exactly degree `d`, in canonical grid order.
fn monic_grid_of_degree<F: ValuedField>(field: &F, coeffs: &[F::Elem], d: usize) -> Vec<Poly<F>> {
    let mut lowers: Vec<Vec<F::Elem>> = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::with_capacity(lowers.len() * coeffs.len());
        for prefix in &lowers {
            for c in coeffs {
                let mut p = prefix.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        lowers = next;
    }
    lowers
        .into_iter()
        .map(|mut lower| {
            lower.push(field.one());
            Poly::new(field.clone(), lower)
        })
        .collect()
}

/// Candidate pool for witness and psi searches at degree `d`: grid
/// polynomials, then `base + c*h` shifts when `deg base = d`, then sequence
/// keys of a root-backed valuation when `d = 1`.
fn monic_candidates<F: ValuedField>(
    v: &XValuation<F>,
    base: Option<&Poly<F>>,
    d: usize,
    params: &SearchParams,
) -> Result<Vec<Poly<F>>, KeyPolyError> {
    let field = v.field();
    let coeffs = field.grid(&params.grid);
    let mut out = monic_grid_of_degree(field, &coeffs, d);
    if let Some(q) = base {
        if q.degree() == Some(d) {
            for h_deg in 0..d {
                for h in monic_grid_of_degree(field, &coeffs, h_deg) {
                    for c in &coeffs {
                        let cand = q.add(&h.mul_elem(c));
                        if cand.degree() == Some(d) && cand.is_monic() && !out.contains(&cand) {
                            out.push(cand);
                        }
                    }
                }
            }
        }
    }
    if d == 1 {
        if let XValuation::Root(r) = v {
            let gen = r.generator();
            for rho in 0..params.window {
                let a = gen.element(rho)?;
                let cand = Poly::x_minus(field.clone(), &a);
                if !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    Ok(out)
}

/// Decides key status by the certification paths of the calculus: linear,
/// psi-membership below a certified key, or the K1-K4 limit
/// characterization; refuted by a bounded search for a smaller-degree
/// polynomial of at least the same level.
pub fn is_key<F: ValuedField>(
    v: &XValuation<F>,
    q: &Poly<F>,
    params: &SearchParams,
) -> Result<KeyStatus<F>, KeyPolyError> {
    if !q.is_monic() || q.degree().unwrap_or(0) < 1 {
        return Err(KeyPolyError::NotMonic);
    }
    let deg_q = q.degree().expect("degree >= 1");
    if deg_q == 1 {
        return Ok(KeyStatus::Certified(CertReason::Linear));
    }
    let level_q = epsilon(v, q)?.value;

    // Bounded falsification: a witness f with deg f < deg q and
    // level(f) >= level(q) is a definitive refutation.
    let mut tried = 0u64;
    let mut budget_hit = false;
    'falsify: for d in 1..deg_q {
        let mut candidates = monic_candidates(v, None, d, params)?;
        for b in 1..deg_q {
            let df = q.hasse_derivative(b);
            if df.degree() == Some(d) {
                if let Some(m) = df.monicized() {
                    if !candidates.contains(&m) {
                        candidates.push(m);
                    }
                }
            }
        }
        for f in candidates {
            if tried >= params.budget {
                budget_hit = true;
                break 'falsify;
            }
            tried += 1;
            let rep = epsilon(v, &f)?;
            if rep.value >= level_q {
                return Ok(KeyStatus::Falsified(FalsifyWitness {
                    witness: f,
                    witness_level: rep.value,
                    level: level_q,
                }));
            }
        }
    }

    // Psi-membership below a certified key drawn from the chain.
    let nu_q = v.eval(q)?;
    let mut predecessors: Vec<Poly<F>> = Vec::new();
    if let Ok(chain) = v.chain_describe() {
        for (key, _) in chain {
            if key.degree().unwrap_or(0) < deg_q && !predecessors.contains(&key) {
                predecessors.push(key);
            }
        }
    }
    for q_minus in &predecessors {
        if q_minus.degree() != Some(1) {
            match is_key(v, q_minus, params)? {
                KeyStatus::Certified(_) => {}
                _ => continue,
            }
        }
        if truncate(v, q_minus, q)? < nu_q {
            let ap = alpha_psi(v, q_minus, deg_q, params)?;
            if ap.alpha == Some(deg_q) {
                return Ok(KeyStatus::Certified(CertReason::PsiMember {
                    q_minus: q_minus.clone(),
                }));
            }
        }
    }

    // Limit characterization for the defining polynomial of a root-backed
    // valuation.
    if let XValuation::Root(r) = v {
        if r.poly() == q {
            let report = classify_limit(v, q, &LimitSource::Generator(r.generator()), params)?;
            if report.overall {
                return Ok(KeyStatus::Certified(CertReason::LimitWitness(Box::new(
                    report,
                ))));
            }
        }
    }

    let _ = budget_hit;
    Ok(KeyStatus::Unknown {
        candidates_tried: tried,
    })
}

// ---------------------------------------------------------------------------
// alpha and psi

/// Result of the bounded search for the least degree where the q-truncation
/// disagrees with the valuation. `alpha = None` mirrors `alpha(Q) = inf`:
/// no disagreement found on the searched region.
#[derive(Clone, Debug)]
pub struct AlphaPsi<F: ValuedField> {
    pub alpha: Option<usize>,
    /// Verified members of Psi(q): monic, of degree alpha, with
    /// `v_q(f) < v(f)`, paired with `v(f)`.
    pub psi: Vec<(Poly<F>, ExtValue)>,
    pub candidates_tried: u64,
    /// Set when the budget ran out before the searched region was exhausted;
    /// a `None` alpha is then inconclusive rather than a searched-region
    /// fact.
    pub budget_exhausted: bool,
}

pub fn alpha_psi<F: ValuedField>(
    v: &XValuation<F>,
    q: &Poly<F>,
    degree_bound: usize,
    params: &SearchParams,
) -> Result<AlphaPsi<F>, KeyPolyError> {
    require_monic_base(q)?;
    let mut tried = 0u64;
    for d in 1..=degree_bound {
        let mut found: Vec<(Poly<F>, ExtValue)> = Vec::new();
        for f in monic_candidates(v, Some(q), d, params)? {
            if tried >= params.budget {
                // stopping mid-degree: report what is known so far
                return Ok(AlphaPsi {
                    alpha: if found.is_empty() { None } else { Some(d) },
                    psi: found,
                    candidates_tried: tried,
                    budget_exhausted: true,
                });
            }
            tried += 1;
            let full = v.eval(&f)?;
            let trunc = truncate(v, q, &f)?;
            if trunc < full {
                found.push((f, full));
            }
        }
        if !found.is_empty() {
            return Ok(AlphaPsi {
                alpha: Some(d),
                psi: found,
                candidates_tried: tried,
                budget_exhausted: false,
            });
        }
    }
    Ok(AlphaPsi {
        alpha: None,
        psi: vec![],
        candidates_tried: tried,
        budget_exhausted: false,
    })
}

// ---------------------------------------------------------------------------
// Limit keys (K1-K4)

/// Where the predecessor key and the psi family come from.
pub enum LimitSource<F: ValuedField> {
    /// A pseudo-convergent generator; the predecessor is `x - a_rho0` for
    /// the first index from which the values of `q` grow strictly.
    Generator(PcsGenerator<F>),
    /// The last key of the valuation's own augmentation chain.
    Chain,
}

/// Bounded verdicts for the four conditions of the limit-key
/// characterization. K1 and K3 are exact on the sampled psi family; K2 is
/// bounded-scale evidence (strict growth along a sampled cofinal family,
/// never a proof); K4 is a bounded falsification search below deg q.
#[derive(Clone, Debug)]
pub struct LimitReport<F: ValuedField> {
    pub q_minus: Poly<F>,
    pub alpha_q_minus: Option<usize>,
    pub k1: bool,
    pub k2: bool,
    pub k3: bool,
    pub k4: bool,
    pub overall: bool,
    /// Sampled members of Psi(q_minus) with their values, ascending.
    pub psi: Vec<(Poly<F>, ExtValue)>,
    pub evidence: &'static str,
}

pub fn classify_limit<F: ValuedField>(
    v: &XValuation<F>,
    q: &Poly<F>,
    source: &LimitSource<F>,
    params: &SearchParams,
) -> Result<LimitReport<F>, KeyPolyError> {
    require_monic_base(q)?;
    let field = v.field().clone();
    let deg_q = q.degree().expect("degree >= 1");

    let q_minus = match source {
        LimitSource::Generator(gen) => {
            let mut values = Vec::new();
            for rho in 0..params.window {
                let a = gen.element(rho)?;
                values.push(field.val(&q.eval(&a)));
            }
            let mut rho0 = 0;
            for i in (1..values.len()).rev() {
                if values[i - 1] >= values[i] {
                    rho0 = i;
                    break;
                }
            }
            Poly::x_minus(field.clone(), &gen.element(rho0)?)
        }
        LimitSource::Chain => {
            let chain = v.chain_describe()?;
            chain.last().expect("chains are nonempty").0.clone()
        }
    };
    let deg_qm = q_minus.degree().expect("keys have degree >= 1");

    // K1: alpha(q_minus) = deg(q_minus), exact on the searched region.
    let ap = alpha_psi(v, &q_minus, deg_qm, params)?;
    let k1 = ap.alpha == Some(deg_qm);

    // The sampled psi family: searched members plus, for generators, the
    // later sequence keys (a cofinal family in Psi).
    let mut psi: Vec<(Poly<F>, ExtValue)> = Vec::new();
    let mut verify_push = |f: Poly<F>, psi: &mut Vec<(Poly<F>, ExtValue)>| -> Result<(), KeyPolyError> {
        if f.degree() != Some(deg_qm) || psi.iter().any(|(g, _)| *g == f) {
            return Ok(());
        }
        let full = v.eval(&f)?;
        if truncate(v, &q_minus, &f)? < full {
            psi.push((f, full));
        }
        Ok(())
    };
    for (f, _) in &ap.psi {
        verify_push(f.clone(), &mut psi)?;
    }
    if let LimitSource::Generator(gen) = source {
        for rho in 0..params.window {
            let a = gen.element(rho)?;
            verify_push(Poly::x_minus(field.clone(), &a), &mut psi)?;
        }
    }
    psi.sort_by(|(_, u), (_, w)| u.cmp(w));

    // K2: strictly increasing sampled values with no sampled maximum.
    let k2 = psi.len() >= 3 && psi.windows(2).all(|w| w[0].1 < w[1].1);

    // K3: v_{Q'}(q) < v(q) for every sampled member.
    let nu_q = v.eval(q)?;
    let mut k3 = !psi.is_empty();
    for (f, _) in &psi {
        if truncate(v, f, q)? >= nu_q {
            k3 = false;
            break;
        }
    }

    // K4: no monic polynomial of smaller degree satisfies K3 on the
    // sampled family.
    let mut k4 = true;
    'outer: for d in 1..deg_q {
        for cand in monic_candidates(v, None, d, params)? {
            let full = v.eval(&cand)?;
            let mut satisfies = !psi.is_empty();
            for (f, _) in &psi {
                if truncate(v, f, &cand)? >= full {
                    satisfies = false;
                    break;
                }
            }
            if satisfies {
                k4 = false;
                break 'outer;
            }
        }
    }

    let overall = k1 && k2 && k3 && k4;
    Ok(LimitReport {
        q_minus,
        alpha_q_minus: ap.alpha,
        k1,
        k2,
        k3,
        k4,
        overall,
        psi,
        evidence: "bounded-scale",
    })
}

// ---------------------------------------------------------------------------
// Certified augmentation

/// Builds `[pred; v(key) = gamma]` and certifies the key against the
/// augmented valuation itself, attaching the certificate. The chain keys of
/// a valuation are keys of the valuation they present, not of their
/// predecessors, so that is what gets certified.
pub fn certify_and_augment<F: ValuedField>(
    pred: XValuation<F>,
    key: Poly<F>,
    gamma: ExtValue,
    params: &SearchParams,
) -> Result<XValuation<F>, KeyPolyError> {
    let pred_value = pred.eval(&key)?;
    if gamma <= pred_value {
        return Err(KeyPolyError::InvalidAugmentation {
            reason: format!("gamma {gamma} does not exceed the predecessor value {pred_value}"),
        });
    }
    let av = AugmentedValuation::new(pred, key.clone(), gamma)?;
    let candidate = XValuation::augmented(av);
    match is_key(&candidate, &key, params)? {
        KeyStatus::Certified(reason) => {
            let XValuation::Augmented(av) = candidate else {
                unreachable!()
            };
            Ok(XValuation::augmented(av.with_certificate(reason.kind())))
        }
        KeyStatus::Falsified(w) => Err(KeyPolyError::KeyRefuted {
            key: key.to_string(),
            witness: w.witness.to_string(),
        }),
        KeyStatus::Unknown { .. } => Err(KeyPolyError::BudgetExhausted),
    }
}

// ---------------------------------------------------------------------------
// Complete sets

#[derive(Clone, Debug)]
pub struct LambdaEntry<F: ValuedField> {
    pub key: Poly<F>,
    pub level: ExtValue,
    pub cert: KeyCertKind,
    pub limit: bool,
}

#[derive(Clone, Debug)]
pub struct WitnessRow<F: ValuedField> {
    pub member: Poly<F>,
    pub key_index: usize,
    pub value: ExtValue,
}

/// The constructed complete set: keys in ascending level order, one witness
/// per covered corpus member, and the uncovered remainder when a budget ran
/// out.
#[derive(Clone, Debug)]
pub struct CompleteSetReport<F: ValuedField> {
    pub lambda: Vec<LambdaEntry<F>>,
    pub witnesses: Vec<WitnessRow<F>>,
    pub uncovered: Vec<Poly<F>>,
}

impl<F: ValuedField> CompleteSetReport<F> {
    /// Re-verifies every witness equation and the level ordering of the set.
    pub fn verify(&self, v: &XValuation<F>) -> Result<bool, KeyPolyError> {
        for w in self.lambda.windows(2) {
            if w[0].level > w[1].level {
                return Ok(false);
            }
        }
        for row in &self.witnesses {
            let q = &self.lambda[row.key_index].key;
            let full = v.eval(&row.member)?;
            if full != row.value || truncate(v, q, &row.member)? != full {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Realizes the existence theorem at desk scale: seed the set from the
/// valuation's own structure (chain keys; sequence keys and the defining
/// polynomial for root-backed valuations), then cover the corpus greedily,
/// extending along the sequence as needed.
pub fn build_complete_set<F: ValuedField>(
    v: &XValuation<F>,
    corpus: &[Poly<F>],
    params: &SearchParams,
) -> Result<CompleteSetReport<F>, KeyPolyError> {
    let field = v.field().clone();
    // entries in insertion order; sorted into level order at the end
    let mut entries: Vec<LambdaEntry<F>> = Vec::new();
    let mut rows: Vec<(Poly<F>, usize, ExtValue)> = Vec::new();
    let mut uncovered: Vec<Poly<F>> = Vec::new();

    fn certify_entry<F: ValuedField>(
        v: &XValuation<F>,
        key: Poly<F>,
        limit: bool,
        params: &SearchParams,
    ) -> Result<LambdaEntry<F>, KeyPolyError> {
        let level = epsilon(v, &key)?.value;
        let cert = match is_key(v, &key, params)? {
            KeyStatus::Certified(reason) => reason.kind(),
            KeyStatus::Falsified(w) => {
                return Err(KeyPolyError::KeyRefuted {
                    key: key.to_string(),
                    witness: w.witness.to_string(),
                })
            }
            KeyStatus::Unknown { .. } => return Err(KeyPolyError::BudgetExhausted),
        };
        Ok(LambdaEntry {
            key,
            level,
            cert,
            limit,
        })
    }

    let mut ladder_count = 0usize;
    match v {
        XValuation::Gauss(_) | XValuation::Augmented(_) => {
            for (key, _) in v.chain_describe()? {
                if !entries.iter().any(|e| e.key == key) {
                    entries.push(certify_entry(v, key, false, params)?);
                }
            }
        }
        XValuation::Root(r) => {
            let gen = r.generator();
            let a0 = gen.element(0)?;
            entries.push(certify_entry(
                v,
                Poly::x_minus(field.clone(), &a0),
                false,
                params,
            )?);
            ladder_count = 1;
            entries.push(certify_entry(v, r.poly().clone(), true, params)?);
        }
    }

    'corpus: for member in corpus {
        let full = v.eval(member)?;
        loop {
            for (i, entry) in entries.iter().enumerate() {
                if truncate(v, &entry.key, member)? == full {
                    rows.push((member.clone(), i, full));
                    continue 'corpus;
                }
            }
            if let XValuation::Root(r) = v {
                if ladder_count < r.cap() as usize {
                    let a = r.generator().element(ladder_count)?;
                    let key = Poly::x_minus(field.clone(), &a);
                    if !entries.iter().any(|e| e.key == key) {
                        entries.push(certify_entry(v, key, false, params)?);
                    }
                    ladder_count += 1;
                    continue;
                }
            }
            uncovered.push(member.clone());
            continue 'corpus;
        }
    }

    // sort into ascending level order and remap witness indices
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&a, &b| {
        entries[a]
            .level
            .cmp(&entries[b].level)
            .then(entries[a].key.cmp_canonical(&entries[b].key))
    });
    let mut position = vec![0usize; entries.len()];
    for (new_idx, &old_idx) in order.iter().enumerate() {
        position[old_idx] = new_idx;
    }
    let mut lambda: Vec<Option<LambdaEntry<F>>> = entries.into_iter().map(Some).collect();
    let lambda: Vec<LambdaEntry<F>> = order
        .iter()
        .map(|&i| lambda[i].take().expect("permutation visits once"))
        .collect();
    let witnesses = rows
        .into_iter()
        .map(|(member, i, value)| WitnessRow {
            member,
            key_index: position[i],
            value,
        })
        .collect();
    Ok(CompleteSetReport {
        lambda,
        witnesses,
        uncovered,
    })
}
