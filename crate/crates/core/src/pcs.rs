//! Pseudo-convergent sequences at desk scale.
//!
//! A sequence is presented either as an explicit finite prefix or through a
//! deterministic generator (Hensel lifting of a simple root, or partial sums
//! of a power series in the uniformizer). The operations here realize the
//! fixed-value dichotomy, the dominant-index law, type classification and
//! the truncation-agreement checks.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::field::{FieldKind, GridSpec, ValuedField};
use crate::poly::Poly;
use crate::value::ExtValue;
use crate::xval::RootValuation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PcsError {
    /// The initial approximation is not a simple root modulo p.
    NonSimpleRoot,
    /// The polynomial has a root in the base field itself.
    RootInBase,
    /// Hensel lifting failed to produce a new element within the per-step cap.
    Stalled,
    /// Neither the fixed nor the strictly-increasing pattern was established
    /// within the (widened) window.
    Indeterminate { window: usize },
    /// A budget or precision cap was hit.
    BudgetExhausted,
    /// The operation needs a constant-free input.
    DegenerateConstant,
    /// The sequence has a (pseudo-)limit in K, violating the standing
    /// hypothesis of the comparison theorem.
    LimitInK { limit: String },
    /// Hensel generators are only available over qp fields.
    UnsupportedField { field: String },
}

impl fmt::Display for PcsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PcsError::NonSimpleRoot => write!(f, "initial approximation is not a simple root"),
            PcsError::RootInBase => write!(f, "polynomial has a root in the base field"),
            PcsError::Stalled => write!(f, "hensel lifting stalled"),
            PcsError::Indeterminate { window } => {
                write!(f, "no stable pattern within window {window}")
            }
            PcsError::BudgetExhausted => write!(f, "budget exhausted"),
            PcsError::DegenerateConstant => write!(f, "constant polynomial"),
            PcsError::LimitInK { limit } => write!(f, "sequence has limit {limit} in K"),
            PcsError::UnsupportedField { field } => {
                write!(f, "generator not supported over {field}")
            }
        }
    }
}

impl std::error::Error for PcsError {}

// ---------------------------------------------------------------------------
// Prefixes

/// A finite prefix `a_0, ..., a_m` together with its step-valuation ladder
/// `gamma_rho = v(a_{rho+1} - a_rho)`.
#[derive(Clone, Debug)]
pub struct PcsPrefix<F: ValuedField> {
    field: F,
    pub elems: Vec<F::Elem>,
    pub gammas: Vec<ExtValue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PcsCheck {
    Ok,
    /// Indices witnessing `v(a_sigma - a_rho) >= v(a_tau - a_sigma)`.
    Violation { rho: usize, sigma: usize, tau: usize },
}

impl<F: ValuedField> PcsPrefix<F> {
    pub fn new(field: F, elems: Vec<F::Elem>) -> PcsPrefix<F> {
        let gammas = elems
            .windows(2)
            .map(|w| field.val(&field.sub(&w[1], &w[0])))
            .collect();
        PcsPrefix { field, elems, gammas }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Exhaustive check of `v(a_sigma - a_rho) < v(a_tau - a_sigma)` over all
    /// index triples of the prefix.
    pub fn check(&self) -> PcsCheck {
        for rho in 0..self.elems.len() {
            for sigma in rho + 1..self.elems.len() {
                for tau in sigma + 1..self.elems.len() {
                    let lo = self
                        .field
                        .val(&self.field.sub(&self.elems[sigma], &self.elems[rho]));
                    let hi = self
                        .field
                        .val(&self.field.sub(&self.elems[tau], &self.elems[sigma]));
                    if lo >= hi {
                        return PcsCheck::Violation { rho, sigma, tau };
                    }
                }
            }
        }
        PcsCheck::Ok
    }
}

/// Exhaustive triple check on a prefix; prefixes of length <= 2 pass
/// vacuously.
pub fn check_pcs<F: ValuedField>(prefix: &PcsPrefix<F>) -> PcsCheck {
    prefix.check()
}

// ---------------------------------------------------------------------------
// Hensel ladder

/// Memoized sequence of canonical-representative Hensel lifts of a simple
/// root of `g`. Element `rho + 1` is the Newton step from element `rho`,
/// reduced to the canonical representative modulo `p^(rho+2)`; when the
/// reduction does not move (a zero digit of the root), the exponent is
/// raised until it does, so prefixes stay strictly pseudo-convergent.
#[derive(Debug)]
pub struct HenselLadder<F: ValuedField> {
    field: F,
    g: Poly<F>,
    dg: Poly<F>,
    a0: F::Elem,
    state: Mutex<LadderState<F>>,
}

#[derive(Debug)]
struct LadderState<F: ValuedField> {
    elems: Vec<F::Elem>,
    gammas: Vec<ExtValue>,
}

const STALL_CAP: u32 = 64;

impl<F: ValuedField> HenselLadder<F> {
    pub fn new(field: F, g: Poly<F>, a0: F::Elem) -> Result<Arc<HenselLadder<F>>, PcsError> {
        if field.kind() != FieldKind::Padic {
            return Err(PcsError::UnsupportedField {
                field: field.descriptor(),
            });
        }
        let dg = g.hasse_derivative(1);
        let g_at = g.eval(&a0);
        if field.is_zero(&g_at) {
            return Err(PcsError::RootInBase);
        }
        if field.val(&g_at) < ExtValue::from_int(1) {
            return Err(PcsError::NonSimpleRoot);
        }
        if field.val(&dg.eval(&a0)) != ExtValue::zero() {
            return Err(PcsError::NonSimpleRoot);
        }
        Ok(Arc::new(HenselLadder {
            field,
            g,
            dg,
            state: Mutex::new(LadderState {
                elems: vec![a0.clone()],
                gammas: vec![],
            }),
            a0,
        }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn poly(&self) -> &Poly<F> {
        &self.g
    }

    pub fn start(&self) -> &F::Elem {
        &self.a0
    }

    fn newton_step(&self, a: &F::Elem) -> F::Elem {
        let num = self.g.eval(a);
        let den = self.dg.eval(a);
        let delta = self.field.div(&num, &den).expect("unit derivative");
        self.field.sub(a, &delta)
    }

    fn extend(&self, state: &mut LadderState<F>) -> Result<(), PcsError> {
        let a = state.elems.last().expect("ladder is never empty").clone();
        let m = match self.field.val(&self.g.eval(&a)) {
            ExtValue::Infinite => return Err(PcsError::RootInBase),
            v => rational_to_u32(&v).ok_or(PcsError::NonSimpleRoot)?,
        };
        let mut approx = a.clone();
        let mut prec = m;
        let mut e = (state.elems.len() as u32 + 1).max(m + 1);
        let mut tries = 0u32;
        loop {
            while prec < e {
                approx = self.newton_step(&approx);
                prec *= 2;
            }
            let cand = self
                .field
                .reduce_mod_pow(&approx, e)
                .expect("hensel iterates are p-integral");
            if cand != a {
                let gamma = self.field.val(&self.field.sub(&cand, &a));
                state.gammas.push(gamma);
                state.elems.push(cand);
                return Ok(());
            }
            e += 1;
            tries += 1;
            if tries > STALL_CAP {
                return Err(PcsError::Stalled);
            }
        }
    }

    pub fn element(&self, i: usize) -> Result<F::Elem, PcsError> {
        let mut state = self.state.lock().expect("ladder lock");
        while state.elems.len() <= i {
            self.extend(&mut state)?;
        }
        Ok(state.elems[i].clone())
    }

    /// `gamma_i = v(a_{i+1} - a_i)`.
    pub fn gamma(&self, i: usize) -> Result<ExtValue, PcsError> {
        let mut state = self.state.lock().expect("ladder lock");
        while state.gammas.len() <= i {
            self.extend(&mut state)?;
        }
        Ok(state.gammas[i].clone())
    }
}

fn rational_to_u32(v: &ExtValue) -> Option<u32> {
    use num_traits::{One, Signed, ToPrimitive};
    let r = v.as_rational()?;
    if !r.denom().is_one() || r.is_negative() {
        return None;
    }
    r.numer().to_u32()
}

// ---------------------------------------------------------------------------
// Generators

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesRule {
    /// Partial sums of `sum_i u^i`; converges to `1/(1-u)` inside K.
    Geom,
    /// Partial sums of `sum_i u^(i^2)`; no limit in K.
    GeomSquares,
}

impl SeriesRule {
    pub fn name(self) -> &'static str {
        match self {
            SeriesRule::Geom => "geom",
            SeriesRule::GeomSquares => "geom-squares",
        }
    }

    pub fn parse(s: &str) -> Option<SeriesRule> {
        match s {
            "geom" => Some(SeriesRule::Geom),
            "geom-squares" => Some(SeriesRule::GeomSquares),
            _ => None,
        }
    }

    fn exponent(self, i: usize) -> usize {
        match self {
            SeriesRule::Geom => i,
            SeriesRule::GeomSquares => i * i,
        }
    }
}

/// A deterministic index -> element rule presenting a pseudo-convergent
/// sequence.
#[derive(Clone, Debug)]
pub enum PcsGenerator<F: ValuedField> {
    Hensel(Arc<HenselLadder<F>>),
    Series { field: F, rule: SeriesRule },
}

impl<F: ValuedField> PcsGenerator<F> {
    pub fn hensel(field: F, g: Poly<F>, a0: F::Elem) -> Result<PcsGenerator<F>, PcsError> {
        Ok(PcsGenerator::Hensel(HenselLadder::new(field, g, a0)?))
    }

    pub fn series(field: F, rule: SeriesRule) -> PcsGenerator<F> {
        PcsGenerator::Series { field, rule }
    }

    pub fn field(&self) -> &F {
        match self {
            PcsGenerator::Hensel(l) => l.field(),
            PcsGenerator::Series { field, .. } => field,
        }
    }

    pub fn element(&self, i: usize) -> Result<F::Elem, PcsError> {
        match self {
            PcsGenerator::Hensel(l) => l.element(i),
            PcsGenerator::Series { field, rule } => {
                let mut acc = field.zero();
                for j in 0..=i {
                    acc = field.add(&acc, &field.uniformizer_pow(rule.exponent(j) as i32));
                }
                Ok(acc)
            }
        }
    }

    pub fn gamma(&self, i: usize) -> Result<ExtValue, PcsError> {
        match self {
            PcsGenerator::Hensel(l) => l.gamma(i),
            PcsGenerator::Series { rule, .. } => {
                Ok(ExtValue::from_int(rule.exponent(i + 1) as i64))
            }
        }
    }

    pub fn prefix(&self, window: usize) -> Result<PcsPrefix<F>, PcsError> {
        let elems = (0..window)
            .map(|i| self.element(i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PcsPrefix::new(self.field().clone(), elems))
    }

    /// A closed-form pseudo-limit in K, when the rule has one.
    pub fn known_limit(&self) -> Option<F::Elem> {
        match self {
            PcsGenerator::Hensel(_) => None,
            PcsGenerator::Series { field, rule } => match rule {
                SeriesRule::Geom => {
                    let den = field.sub(&field.one(), &field.uniformizer());
                    Some(field.div(&field.one(), &den).expect("1 - u is nonzero"))
                }
                SeriesRule::GeomSquares => None,
            },
        }
    }

    /// The minimal-degree unfixed polynomial, when the generator knows it
    /// (the lifted polynomial of a Hensel ladder).
    pub fn algebraic_poly(&self) -> Option<&Poly<F>> {
        match self {
            PcsGenerator::Hensel(l) => Some(l.poly()),
            PcsGenerator::Series { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PcsGenerator::Hensel(l) => format!(
                "hensel:{};g={};a0={}",
                l.field().descriptor(),
                l.poly(),
                l.field().format_elem(l.start())
            ),
            PcsGenerator::Series { field, rule } => {
                format!("series:{};expr={}", field.descriptor(), rule.name())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Fixed values

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedStatus {
    /// Two consecutive equal values strictly below the current gamma, and
    /// constant through the rest of the window.
    Fixed { value: ExtValue, rho_f: usize },
    /// Strictly increasing across the whole (widened) window.
    Increasing,
}

/// Observation record for `v(f(a_rho))` along a generator window.
#[derive(Clone, Debug)]
pub struct FixedValueReport {
    pub status: FixedStatus,
    pub values: Vec<ExtValue>,
    pub gammas: Vec<ExtValue>,
    pub window: usize,
}

impl FixedValueReport {
    pub fn fixed_value(&self) -> Option<&ExtValue> {
        match &self.status {
            FixedStatus::Fixed { value, .. } => Some(value),
            FixedStatus::Increasing => None,
        }
    }
}

fn observe<F: ValuedField>(
    gen: &PcsGenerator<F>,
    f: &Poly<F>,
    window: usize,
) -> Result<(Vec<ExtValue>, Vec<ExtValue>), PcsError> {
    let field = gen.field();
    let mut values = Vec::with_capacity(window);
    let mut gammas = Vec::with_capacity(window);
    for rho in 0..window {
        let a = gen.element(rho)?;
        values.push(field.val(&f.eval(&a)));
        gammas.push(gen.gamma(rho)?);
    }
    Ok((values, gammas))
}

fn classify_window(values: &[ExtValue], gammas: &[ExtValue]) -> Option<FixedStatus> {
    // Zeros of f among the a_rho (infinite values) can only occur finitely
    // often; patterns are read after the last one.
    let start = values
        .iter()
        .rposition(|v| v.is_infinite())
        .map_or(0, |i| i + 1);
    let tail = &values[start..];
    if tail.len() < 2 {
        return None;
    }
    for (i, pair) in tail.windows(2).enumerate() {
        let rho = start + i;
        if pair[0] == pair[1] && pair[0] < gammas[rho] {
            // candidate stabilization; insist on constancy through the window
            if tail[i..].iter().all(|v| *v == pair[0]) {
                return Some(FixedStatus::Fixed {
                    value: pair[0].clone(),
                    rho_f: rho,
                });
            } else {
                return None;
            }
        }
    }
    if tail.windows(2).all(|w| w[0] < w[1]) && tail.len() >= 2 && start == 0 {
        return Some(FixedStatus::Increasing);
    }
    None
}

/// Decides whether the sequence fixes the value of `f`, by the stabilization
/// rule (two consecutive equal values strictly below the running gamma), or
/// observes strict growth. The window is widened once before giving up.
pub fn fixed_value<F: ValuedField>(
    gen: &PcsGenerator<F>,
    f: &Poly<F>,
    window: usize,
) -> Result<FixedValueReport, PcsError> {
    assert!(window >= 3, "window must be at least 3");
    if f.is_zero() {
        return Ok(FixedValueReport {
            status: FixedStatus::Fixed {
                value: ExtValue::Infinite,
                rho_f: 0,
            },
            values: vec![ExtValue::Infinite; window],
            gammas: vec![],
            window,
        });
    }
    let mut w = window;
    for attempt in 0..2 {
        let (values, gammas) = observe(gen, f, w)?;
        if let Some(status) = classify_window(&values, &gammas) {
            return Ok(FixedValueReport {
                status,
                values,
                gammas,
                window: w,
            });
        }
        if attempt == 0 {
            w *= 2;
        }
    }
    Err(PcsError::Indeterminate { window: w })
}

// ---------------------------------------------------------------------------
// Dominant index (Lemma 8 shape)

/// The dominant derivative index `h` together with the fixed values
/// `beta_i` of the nonvanishing derivatives.
#[derive(Clone, Debug)]
pub struct DominantReport {
    pub h: usize,
    /// `(i, beta_i)` for the derivatives with a finite fixed value.
    pub betas: Vec<(usize, ExtValue)>,
    /// Whether the value of `f` itself is fixed (then the prediction covers
    /// the steps `v(f(a_{rho+1}) - f(a_rho))`) or growing (then it covers
    /// `v(f(a_rho))` directly).
    pub f_fixed: bool,
    /// Indices of the window on which the prediction was verified.
    pub verified_tail: Vec<usize>,
}

/// Finds the power-of-p index `h` whose term `beta_h + h*gamma_rho`
/// eventually strictly dominates the Taylor-term minimum, and verifies the
/// predicted values on the tail of the window.
pub fn dominant_index<F: ValuedField>(
    gen: &PcsGenerator<F>,
    f: &Poly<F>,
    window: usize,
) -> Result<DominantReport, PcsError> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Err(PcsError::DegenerateConstant);
    }
    let field = gen.field();
    // fixed values of the derivatives
    let mut betas = Vec::new();
    for i in 1..=deg {
        let df = f.hasse_derivative(i);
        if df.is_zero() {
            continue; // beta_i = inf, excluded from the minimum
        }
        let rep = fixed_value(gen, &df, window)?;
        match rep.status {
            FixedStatus::Fixed { value, .. } => {
                if value.is_finite() {
                    betas.push((i, value));
                }
            }
            FixedStatus::Increasing => return Err(PcsError::Indeterminate { window }),
        }
    }
    if betas.is_empty() {
        return Err(PcsError::Indeterminate { window });
    }
    // For gamma large the term with the smallest index among the finite
    // betas wins; verify strict dominance at the window edge.
    let h = betas[0].0;
    let beta_h = betas[0].1.clone();
    let gamma_last = gen.gamma(window.saturating_sub(2).max(0))?;
    for (i, beta_i) in betas.iter().skip(1) {
        let lhs = beta_i + &gamma_last.scale(*i);
        let rhs = &beta_h + &gamma_last.scale(h);
        if lhs <= rhs {
            return Err(PcsError::Indeterminate { window });
        }
    }
    let p = field.exponent_characteristic();
    if !is_power_of(h as u64, p) {
        // Kaplansky's lemma promises a power of p; reaching this means the
        // window was too small to expose it.
        return Err(PcsError::Indeterminate { window });
    }
    // prediction check on the tail
    let f_rep = fixed_value(gen, f, window)?;
    let f_fixed = matches!(f_rep.status, FixedStatus::Fixed { .. });
    let mut verified = Vec::new();
    let tail_start = window / 2;
    for rho in tail_start..window - 1 {
        let gamma_rho = gen.gamma(rho)?;
        let predicted = &beta_h + &gamma_rho.scale(h);
        let observed = if f_fixed {
            // step identity: v(f(a_{rho+1}) - f(a_rho))
            let a = gen.element(rho)?;
            let b = gen.element(rho + 1)?;
            let step = field.sub(&f.eval(&b), &f.eval(&a));
            let v = field.val(&step);
            // in the fixed regime the step must not disturb the value
            let fixed_v = f_rep.fixed_value().expect("fixed status");
            if v <= *fixed_v {
                return Err(PcsError::Indeterminate { window });
            }
            v
        } else {
            let a = gen.element(rho)?;
            field.val(&f.eval(&a))
        };
        if observed != predicted {
            return Err(PcsError::Indeterminate { window });
        }
        verified.push(rho);
    }
    Ok(DominantReport {
        h,
        betas,
        f_fixed,
        verified_tail: verified,
    })
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if p == 1 {
        return n == 1;
    }
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

// ---------------------------------------------------------------------------
// Type classification

#[derive(Clone, Debug)]
pub enum SequenceType<F: ValuedField> {
    /// Every sampled polynomial of degree <= d has a fixed value; this is
    /// bounded-degree evidence, never a proof.
    TranscendentalUpTo(usize),
    /// A minimal-degree polynomial whose values grow without bound.
    Algebraic(Poly<F>),
}

/// Classifies the sequence by sweeping monic grid polynomials. Hensel
/// generators verify that everything below `deg g` is fixed and return `g`;
/// series generators scan the grid exhaustively up to the degree bound.
pub fn classify_type<F: ValuedField>(
    gen: &PcsGenerator<F>,
    degree_bound: usize,
    window: usize,
    grid: &GridSpec,
) -> Result<SequenceType<F>, PcsError> {
    let field = gen.field();
    let coeffs = field.grid(grid);
    if let Some(g) = gen.algebraic_poly() {
        let gdeg = g.degree().expect("nonzero");
        if gdeg > degree_bound {
            return Ok(SequenceType::TranscendentalUpTo(degree_bound));
        }
        for f in monic_grid_polys(field, &coeffs, gdeg - 1) {
            let rep = fixed_value(gen, &f, window)?;
            if matches!(rep.status, FixedStatus::Increasing) {
                // would contradict minimality of g
                return Ok(SequenceType::Algebraic(f));
            }
        }
        let rep = fixed_value(gen, g, window)?;
        if !matches!(rep.status, FixedStatus::Increasing) {
            return Err(PcsError::Indeterminate { window });
        }
        return Ok(SequenceType::Algebraic(g.clone()));
    }
    for f in monic_grid_polys(field, &coeffs, degree_bound) {
        let rep = fixed_value(gen, &f, window)?;
        if let FixedStatus::Increasing = rep.status {
            return Ok(SequenceType::Algebraic(f));
        }
    }
    Ok(SequenceType::TranscendentalUpTo(degree_bound))
}

/// Monic polynomials of degree 1..=bound with lower coefficients drawn from
/// the grid, in canonical order.
pub fn monic_grid_polys<F: ValuedField>(
    field: &F,
    coeffs: &[F::Elem],
    bound: usize,
) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    for d in 1..=bound {
        let mut stack: Vec<Vec<F::Elem>> = vec![vec![]];
        let mut level = Vec::new();
        for _ in 0..d {
            level.clear();
            for prefix in stack.drain(..) {
                for c in coeffs {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    level.push(next);
                }
            }
            std::mem::swap(&mut stack, &mut level);
        }
        for mut lower in stack {
            lower.push(field.one());
            out.push(Poly::new(field.clone(), lower));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Truncation agreement (the corollary dichotomy)

/// Per-index record of the truncation `v_rho(f) = v_{x - a_rho}(f)`.
#[derive(Clone, Debug)]
pub struct AgreementReport {
    pub fixed: bool,
    pub value: Option<ExtValue>,
    /// `(rho, v_rho(f), v(f(a_rho)))`.
    pub rows: Vec<(usize, ExtValue, ExtValue)>,
    pub nu_f: ExtValue,
}

/// Checks the corollary dichotomy exactly: if the sequence fixes the value
/// of `f` then `v_rho(f) = v(f)` from the stabilization index on, otherwise
/// `v_rho(f) < v(f)` at every index; and in both cases the proof identity
/// `v_rho(f) = v(f(a_rho))`.
pub fn verify_truncation_agreement<F: ValuedField>(
    v: &RootValuation<F>,
    gen: &PcsGenerator<F>,
    f: &Poly<F>,
    window: usize,
) -> Result<AgreementReport, PcsError> {
    let field = gen.field().clone();
    if f.is_zero() {
        return Err(PcsError::DegenerateConstant);
    }
    let nu_f = v.eval(f).map_err(|_| PcsError::BudgetExhausted)?;
    let fixed_rep = if f.is_constant() {
        None
    } else {
        Some(fixed_value(gen, f, window)?)
    };
    let fixed = match &fixed_rep {
        None => true,
        Some(rep) => matches!(rep.status, FixedStatus::Fixed { .. }),
    };
    let rho_f = fixed_rep.as_ref().and_then(|rep| match &rep.status {
        FixedStatus::Fixed { rho_f, .. } => Some(*rho_f),
        FixedStatus::Increasing => None,
    });
    let mut rows = Vec::new();
    for rho in 0..window {
        let a = gen.element(rho)?;
        let gamma_rho = gen.gamma(rho)?;
        // v_rho(f) as the Taylor-term minimum at a_rho
        let taylor = f.taylor_expansion(&a);
        let mut trunc = ExtValue::Infinite;
        for (i, c) in taylor.iter().enumerate() {
            let term = field.val(c) + gamma_rho.scale(i);
            trunc = trunc.min(term);
        }
        let direct = field.val(&f.eval(&a));
        // proof identity
        if trunc != direct {
            return Err(PcsError::Indeterminate { window });
        }
        if fixed {
            let settled = rho_f.map_or(true, |r| rho >= r);
            if settled && trunc != nu_f {
                return Err(PcsError::Indeterminate { window });
            }
        } else if trunc >= nu_f {
            return Err(PcsError::Indeterminate { window });
        }
        rows.push((rho, trunc, direct));
    }
    Ok(AgreementReport {
        fixed,
        value: fixed_rep.and_then(|r| r.fixed_value().cloned()),
        rows,
        nu_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Padic;

    fn qp7() -> Padic {
        Padic::new(7).unwrap()
    }

    fn sqrt2_gen() -> PcsGenerator<Padic> {
        let f = qp7();
        let g = Poly::from_ints(f.clone(), &[-2, 0, 1]);
        PcsGenerator::hensel(f.clone(), g, f.from_int(3)).unwrap()
    }

    #[test]
    fn hensel_ladder_frozen_prefix() {
        // independent oracle: sympy ladder 3, 10, 108, 2166, 4567 with
        // v(g(a_rho)) = rho + 1
        let gen = sqrt2_gen();
        let f = qp7();
        let expect = [3i64, 10, 108, 2166, 4567];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(gen.element(i).unwrap(), f.from_int(*e));
        }
        let g = Poly::from_ints(f.clone(), &[-2, 0, 1]);
        for rho in 0..5 {
            let a = gen.element(rho).unwrap();
            assert_eq!(f.val(&g.eval(&a)), ExtValue::from_int(rho as i64 + 1));
        }
        for rho in 0..4 {
            assert_eq!(gen.gamma(rho).unwrap(), ExtValue::from_int(rho as i64 + 1));
        }
    }

    #[test]
    fn conjugate_ladder_skips_zero_digits() {
        // the expansion of the other square root has a zero digit at
        // position 3; the ladder must skip it and stay strictly pcs
        let f = qp7();
        let g = Poly::from_ints(f.clone(), &[-2, 0, 1]);
        let gen = PcsGenerator::hensel(f.clone(), g, f.from_int(4)).unwrap();
        assert_eq!(gen.element(0).unwrap(), f.from_int(4));
        assert_eq!(gen.element(1).unwrap(), f.from_int(39));
        let prefix = gen.prefix(8).unwrap();
        assert_eq!(check_pcs(&prefix), PcsCheck::Ok);
        for w in prefix.gammas.windows(2) {
            assert!(w[0] < w[1]);
        }
        // gamma jumps over the zero digit: 1, 2, 4, ...
        assert_eq!(prefix.gammas[..3].to_vec(), vec![
            ExtValue::from_int(1),
            ExtValue::from_int(2),
            ExtValue::from_int(4),
        ]);
    }

    #[test]
    fn non_simple_root_is_rejected() {
        let f = qp7();
        let g = Poly::from_ints(f.clone(), &[0, 0, 1]); // x^2
        assert_eq!(
            PcsGenerator::hensel(f.clone(), g, f.zero()).unwrap_err(),
            PcsError::NonSimpleRoot
        );
    }

    #[test]
    fn explicit_prefix_checks() {
        let f = qp7();
        let ok = PcsPrefix::new(
            f.clone(),
            vec![f.from_int(3), f.from_int(10), f.from_int(108)],
        );
        assert_eq!(ok.check(), PcsCheck::Ok);
        assert_eq!(ok.gammas, vec![ExtValue::from_int(1), ExtValue::from_int(2)]);

        let bad = PcsPrefix::new(
            f.clone(),
            vec![f.from_int(0), f.from_int(7), f.from_int(14)],
        );
        assert_eq!(
            bad.check(),
            PcsCheck::Violation {
                rho: 0,
                sigma: 1,
                tau: 2
            }
        );

        let two = PcsPrefix::new(f.clone(), vec![f.from_int(0), f.from_int(7)]);
        assert_eq!(two.check(), PcsCheck::Ok);
    }

    #[test]
    fn fixed_values_along_sqrt2() {
        let gen = sqrt2_gen();
        let f = qp7();
        // x has fixed value 0 from the start
        let rep = fixed_value(&gen, &Poly::x(f.clone()), 5).unwrap();
        assert_eq!(
            rep.status,
            FixedStatus::Fixed {
                value: ExtValue::zero(),
                rho_f: 0
            }
        );
        // x^2 - 2 grows forever
        let g = Poly::from_ints(f.clone(), &[-2, 0, 1]);
        let rep = fixed_value(&gen, &g, 5).unwrap();
        assert_eq!(rep.status, FixedStatus::Increasing);
        assert_eq!(
            rep.values,
            (1..=5).map(ExtValue::from_int).collect::<Vec<_>>()
        );
        // x - 3 vanishes at rho = 0 and then sits at gamma_0 = 1
        let rep = fixed_value(&gen, &Poly::from_ints(f.clone(), &[-3, 1]), 5).unwrap();
        assert_eq!(
            rep.status,
            FixedStatus::Fixed {
                value: ExtValue::from_int(1),
                rho_f: 1
            }
        );
    }

    #[test]
    fn dominant_index_for_sqrt2() {
        let gen = sqrt2_gen();
        let f = qp7();
        let g = Poly::from_ints(f.clone(), &[-2, 0, 1]);
        let rep = dominant_index(&gen, &g, 6).unwrap();
        assert_eq!(rep.h, 1);
        assert_eq!(rep.betas[0], (1, ExtValue::zero()));
        assert_eq!(rep.betas[1], (2, ExtValue::zero()));
        assert!(!rep.f_fixed);
        let c = Poly::from_ints(f, &[5]);
        assert_eq!(
            dominant_index(&gen, &c, 6).unwrap_err(),
            PcsError::DegenerateConstant
        );
    }

    #[test]
    fn dominant_index_char_p() {
        use crate::field::TSeries;
        let t3 = TSeries::new(3).unwrap();
        let gen = PcsGenerator::series(t3.clone(), SeriesRule::Geom);
        let cube = Poly::from_ints(t3, &[0, 0, 0, 1]);
        let rep = dominant_index(&gen, &cube, 6).unwrap();
        assert_eq!(rep.h, 3);
        assert!(rep.f_fixed);
        assert_eq!(rep.betas, vec![(3, ExtValue::zero())]);
    }

    #[test]
    fn geom_squares_gammas() {
        let f5 = Padic::new(5).unwrap();
        let gen = PcsGenerator::series(f5, SeriesRule::GeomSquares);
        let prefix = gen.prefix(5).unwrap();
        assert_eq!(check_pcs(&prefix), PcsCheck::Ok);
        assert_eq!(
            prefix.gammas,
            vec![
                ExtValue::from_int(1),
                ExtValue::from_int(4),
                ExtValue::from_int(9),
                ExtValue::from_int(16),
            ]
        );
    }

    #[test]
    fn geom_has_a_limit_in_k() {
        let f5 = Padic::new(5).unwrap();
        let gen = PcsGenerator::series(f5.clone(), SeriesRule::Geom);
        let limit = gen.known_limit().unwrap();
        // v(limit - a_rho) = gamma_rho for every rho in the window
        for rho in 0..6 {
            let a = gen.element(rho).unwrap();
            assert_eq!(
                f5.val(&f5.sub(&limit, &a)),
                gen.gamma(rho).unwrap()
            );
        }
    }
}
