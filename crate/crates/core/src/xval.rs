//! Representations of valuations on K[x].
//!
//! Three constructive forms cover the desk-scale phenomena: monomial (Gauss)
//! valuations, finite augmentation chains, and root-backed valuations whose
//! values are stabilized along a Hensel ladder. All three evaluate exactly.

use std::fmt;
use std::sync::Arc;

use crate::field::{FieldKind, ValuedField};
use crate::pcs::{HenselLadder, PcsError, PcsGenerator};
use crate::poly::{Irreducibility, Poly};
use crate::value::ExtValue;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// Root-backed evaluation failed to certify a stable value within the
    /// precision cap.
    BudgetExhausted { cap: u32 },
    /// The underlying ladder could not be extended.
    Ladder(PcsError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::BudgetExhausted { cap } => {
                write!(f, "no stable value within {cap} hensel steps")
            }
            EvalError::Ladder(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EvalError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XvalError {
    /// Root valuations are only available over qp fields in this version.
    UnsupportedField { field: String },
    /// chain_describe on a root-backed valuation.
    Unsupported,
    NotMonic,
    /// The defining polynomial of a root valuation splits.
    Reducible { factor: String },
    Ladder(PcsError),
}

impl fmt::Display for XvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XvalError::UnsupportedField { field } => {
                write!(f, "root valuations are not supported over {field}")
            }
            XvalError::Unsupported => write!(f, "operation unsupported for this variant"),
            XvalError::NotMonic => write!(f, "polynomial must be monic"),
            XvalError::Reducible { factor } => {
                write!(f, "polynomial is reducible (factor {factor})")
            }
            XvalError::Ladder(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for XvalError {}

/// How the key certificate attached to an augmentation was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyCertKind {
    Linear,
    PsiMember,
    LimitWitness,
}

impl fmt::Display for KeyCertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyCertKind::Linear => write!(f, "linear"),
            KeyCertKind::PsiMember => write!(f, "psi-member"),
            KeyCertKind::LimitWitness => write!(f, "limit-witness"),
        }
    }
}

// ---------------------------------------------------------------------------
// Gauss

/// The monomial valuation `v(sum a_i x^i) = min_i (v(a_i) + i*gamma_x)`.
#[derive(Clone, Debug)]
pub struct GaussValuation<F: ValuedField> {
    field: F,
    gamma_x: ExtValue,
}

impl<F: ValuedField> GaussValuation<F> {
    pub fn new(field: F, gamma_x: ExtValue) -> GaussValuation<F> {
        GaussValuation { field, gamma_x }
    }

    pub fn gamma_x(&self) -> &ExtValue {
        &self.gamma_x
    }

    pub fn eval(&self, f: &Poly<F>) -> ExtValue {
        let mut best = ExtValue::Infinite;
        for (i, c) in f.coeffs().iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            best = best.min(self.field.val(c) + self.gamma_x.scale(i));
        }
        best
    }
}

// ---------------------------------------------------------------------------
// Augmented

/// `[pred; v(key) = gamma]`: values are read off the key-standard expansion,
/// digits being evaluated by the predecessor.
#[derive(Clone, Debug)]
pub struct AugmentedValuation<F: ValuedField> {
    pred: XValuation<F>,
    key: Poly<F>,
    gamma: ExtValue,
    certificate: Option<KeyCertKind>,
}

impl<F: ValuedField> AugmentedValuation<F> {
    /// Structural constructor. Semantic requirements (gamma strictly above
    /// the predecessor value of the key, key certificate) are reported by
    /// [`XValuation::validate`], and enforced by the certifying constructor
    /// in `keypoly`.
    pub fn new(pred: XValuation<F>, key: Poly<F>, gamma: ExtValue) -> Result<Self, XvalError> {
        if !key.is_monic() || key.degree().unwrap_or(0) < 1 {
            return Err(XvalError::NotMonic);
        }
        Ok(AugmentedValuation {
            pred,
            key,
            gamma,
            certificate: None,
        })
    }

    pub fn with_certificate(mut self, cert: KeyCertKind) -> Self {
        self.certificate = Some(cert);
        self
    }

    pub fn predecessor(&self) -> &XValuation<F> {
        &self.pred
    }

    pub fn key(&self) -> &Poly<F> {
        &self.key
    }

    pub fn gamma(&self) -> &ExtValue {
        &self.gamma
    }

    pub fn certificate(&self) -> Option<KeyCertKind> {
        self.certificate
    }

    pub fn eval(&self, f: &Poly<F>) -> Result<ExtValue, EvalError> {
        if f.is_zero() {
            return Ok(ExtValue::Infinite);
        }
        let digits = f
            .q_expansion(&self.key)
            .expect("augmentation key is monic of positive degree");
        let mut best = ExtValue::Infinite;
        for (i, d) in digits.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            best = best.min(self.pred.eval(d)? + self.gamma.scale(i));
        }
        Ok(best)
    }
}

// ---------------------------------------------------------------------------
// Root-backed

/// `v(f) = v^(f(z))` for the Hensel limit `z` of a simple root of `g`;
/// infinite exactly on multiples of `g`. Values of non-multiples are
/// certified by stabilization along the ladder (equal at two consecutive
/// depths and strictly below the running gamma).
#[derive(Clone, Debug)]
pub struct RootValuation<F: ValuedField> {
    ladder: Arc<HenselLadder<F>>,
    cap: u32,
}

pub const DEFAULT_ROOT_PRECISION_CAP: u32 = 64;

impl<F: ValuedField> RootValuation<F> {
    pub fn new(field: F, g: Poly<F>, a0: F::Elem, cap: u32) -> Result<Self, XvalError> {
        if field.kind() != FieldKind::Padic {
            return Err(XvalError::UnsupportedField {
                field: field.descriptor(),
            });
        }
        if !g.is_monic() {
            return Err(XvalError::NotMonic);
        }
        if let Irreducibility::Factor(h) = g.irreducible_bounded(20_000) {
            return Err(XvalError::Reducible {
                factor: h.to_string(),
            });
        }
        let ladder = HenselLadder::new(field, g, a0).map_err(XvalError::Ladder)?;
        Ok(RootValuation { ladder, cap })
    }

    pub fn field(&self) -> &F {
        self.ladder.field()
    }

    pub fn poly(&self) -> &Poly<F> {
        self.ladder.poly()
    }

    pub fn start(&self) -> &F::Elem {
        self.ladder.start()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// The ladder as a pcs generator (shared memoization).
    pub fn generator(&self) -> PcsGenerator<F> {
        PcsGenerator::Hensel(Arc::clone(&self.ladder))
    }

    pub fn eval(&self, f: &Poly<F>) -> Result<ExtValue, EvalError> {
        if f.is_zero() {
            return Ok(ExtValue::Infinite);
        }
        if self.ladder.poly().divides(f) {
            return Ok(ExtValue::Infinite);
        }
        let field = self.ladder.field();
        let mut prev: Option<ExtValue> = None;
        for rho in 0..self.cap as usize {
            let a = self.ladder.element(rho).map_err(EvalError::Ladder)?;
            let v = field.val(&f.eval(&a));
            let gamma = self.ladder.gamma(rho).map_err(EvalError::Ladder)?;
            if let Some(p) = &prev {
                if *p == v && v < gamma {
                    return Ok(v);
                }
            }
            prev = Some(v);
        }
        Err(EvalError::BudgetExhausted { cap: self.cap })
    }
}

// ---------------------------------------------------------------------------
// The tagged union

#[derive(Clone, Debug)]
pub enum XValuation<F: ValuedField> {
    Gauss(GaussValuation<F>),
    Augmented(Box<AugmentedValuation<F>>),
    Root(RootValuation<F>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// gamma <= predecessor value of the augmentation key.
    NonIncreasingAugmentation { key: String, gamma: String },
    MissingKeyCertificate { key: String },
    /// The standing assumption v(x) >= 0 fails.
    NegativeValueOfX,
    GammaXNotFinite,
    DecreasingKeyDegrees,
    /// A predecessor value could not be computed within budget.
    Unverifiable { key: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonIncreasingAugmentation { key, gamma } => {
                write!(f, "non-increasing augmentation: v({key}) = {gamma} does not exceed the predecessor value")
            }
            Violation::MissingKeyCertificate { key } => {
                write!(f, "missing key certificate for {key}")
            }
            Violation::NegativeValueOfX => write!(f, "v(x) >= 0 required"),
            Violation::GammaXNotFinite => write!(f, "gamma_x must be finite"),
            Violation::DecreasingKeyDegrees => write!(f, "key degrees decrease along the chain"),
            Violation::Unverifiable { key } => {
                write!(f, "could not verify augmentation at {key} within budget")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<F: ValuedField> XValuation<F> {
    pub fn gauss(field: F, gamma_x: ExtValue) -> XValuation<F> {
        XValuation::Gauss(GaussValuation::new(field, gamma_x))
    }

    pub fn augmented(av: AugmentedValuation<F>) -> XValuation<F> {
        XValuation::Augmented(Box::new(av))
    }

    pub fn root(rv: RootValuation<F>) -> XValuation<F> {
        XValuation::Root(rv)
    }

    pub fn field(&self) -> &F {
        match self {
            XValuation::Gauss(g) => &g.field,
            XValuation::Augmented(a) => a.pred.field(),
            XValuation::Root(r) => r.field(),
        }
    }

    /// `v(f)`, exactly.
    pub fn eval(&self, f: &Poly<F>) -> Result<ExtValue, EvalError> {
        match self {
            XValuation::Gauss(g) => Ok(g.eval(f)),
            XValuation::Augmented(a) => a.eval(f),
            XValuation::Root(r) => r.eval(f),
        }
    }

    /// The augmentation ladder `(Q_i, gamma_i)` from the monomial stage out.
    pub fn chain_describe(&self) -> Result<Vec<(Poly<F>, ExtValue)>, XvalError> {
        match self {
            XValuation::Gauss(g) => Ok(vec![(Poly::x(g.field.clone()), g.gamma_x.clone())]),
            XValuation::Augmented(a) => {
                let mut chain = a.pred.chain_describe()?;
                chain.push((a.key.clone(), a.gamma.clone()));
                Ok(chain)
            }
            XValuation::Root(_) => Err(XvalError::Unsupported),
        }
    }

    /// Checks the construction constraints; violations are reported, not
    /// panicked on.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.validate_into(&mut report);
        // standing assumption on the whole valuation
        let x = Poly::x(self.field().clone());
        match self.eval(&x) {
            Ok(v) if v < ExtValue::zero() => report.violations.push(Violation::NegativeValueOfX),
            Ok(_) => {}
            Err(_) => report.violations.push(Violation::Unverifiable {
                key: "x".to_string(),
            }),
        }
        if let Ok(chain) = self.chain_describe() {
            let degrees: Vec<usize> = chain
                .iter()
                .map(|(q, _)| q.degree().unwrap_or(0))
                .collect();
            if degrees.windows(2).any(|w| w[0] > w[1]) {
                report.violations.push(Violation::DecreasingKeyDegrees);
            }
        }
        report
    }

    fn validate_into(&self, report: &mut ValidationReport) {
        match self {
            XValuation::Gauss(g) => {
                if g.gamma_x.is_infinite() {
                    report.violations.push(Violation::GammaXNotFinite);
                }
            }
            XValuation::Augmented(a) => {
                a.pred.validate_into(report);
                match a.pred.eval(&a.key) {
                    Ok(pred_v) => {
                        if a.gamma <= pred_v {
                            report
                                .violations
                                .push(Violation::NonIncreasingAugmentation {
                                    key: a.key.to_string(),
                                    gamma: a.gamma.to_string(),
                                });
                        }
                    }
                    Err(_) => report.violations.push(Violation::Unverifiable {
                        key: a.key.to_string(),
                    }),
                }
                if a.certificate.is_none() {
                    report.violations.push(Violation::MissingKeyCertificate {
                        key: a.key.to_string(),
                    });
                }
            }
            XValuation::Root(_) => {}
        }
    }

    /// Canonical descriptor string; parses back with `parse::parse_valuation`.
    pub fn describe(&self) -> String {
        match self {
            XValuation::Gauss(g) => {
                format!("gauss:{}:{}", g.field.descriptor(), g.gamma_x)
            }
            XValuation::Augmented(a) => {
                format!("aug:({});Q={};g={}", a.pred.describe(), a.key, a.gamma)
            }
            XValuation::Root(r) => format!(
                "root:{};g={};a0={}",
                r.field().descriptor(),
                r.poly(),
                r.field().format_elem(r.start())
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Padic;

    fn qp3() -> Padic {
        Padic::new(3).unwrap()
    }

    fn gauss31() -> XValuation<Padic> {
        XValuation::gauss(qp3(), ExtValue::from_int(1))
    }

    #[test]
    fn gauss_monomial_minimum() {
        let v = gauss31();
        // brute-force oracle: min(v(1) + 0, v(1) + 2) = 0
        let f = Poly::from_ints(qp3(), &[1, 0, 1]);
        assert_eq!(v.eval(&f).unwrap(), ExtValue::zero());
        assert_eq!(
            v.eval(&Poly::from_ints(qp3(), &[-3, 1])).unwrap(),
            ExtValue::from_int(1)
        );
        assert_eq!(v.eval(&Poly::zero(qp3())).unwrap(), ExtValue::Infinite);
    }

    #[test]
    fn augmented_expansion_rule() {
        // [gauss(qp:3, 1); v(x-3) = 2]: x^2 - 9 = (x-3)^2 + 6(x-3),
        // min(inf, 1 + 2, 0 + 4) = 3
        let key = Poly::from_ints(qp3(), &[-3, 1]);
        let av = AugmentedValuation::new(gauss31(), key, ExtValue::from_int(2))
            .unwrap()
            .with_certificate(KeyCertKind::Linear);
        let v = XValuation::augmented(av);
        let f = Poly::from_ints(qp3(), &[-9, 0, 1]);
        assert_eq!(v.eval(&f).unwrap(), ExtValue::from_int(3));
    }

    #[test]
    fn root_support_case() {
        let f7 = Padic::new(7).unwrap();
        let g = Poly::from_ints(f7.clone(), &[-2, 0, 1]);
        let rv = RootValuation::new(f7.clone(), g.clone(), f7.from_int(3), 64).unwrap();
        assert_eq!(rv.eval(&g).unwrap(), ExtValue::Infinite);
        assert_eq!(rv.eval(&g.mul(&g)).unwrap(), ExtValue::Infinite);
        // v(x - 10) = 2: 10 matches the root mod 49 but not mod 343
        let f = Poly::from_ints(f7.clone(), &[-10, 1]);
        assert_eq!(rv.eval(&f).unwrap(), ExtValue::from_int(2));
        // restriction to constants
        let c = Poly::constant(f7.clone(), f7.from_int(98));
        assert_eq!(rv.eval(&c).unwrap(), ExtValue::from_int(2));
    }

    #[test]
    fn root_rejects_reducible_and_non_padic() {
        let f3 = qp3();
        let sq = Poly::from_ints(f3.clone(), &[-9, 0, 1]);
        assert!(matches!(
            RootValuation::new(f3.clone(), sq, f3.from_int(3), 64),
            Err(XvalError::Reducible { .. })
        ));
        use crate::field::TSeries;
        let t3 = TSeries::new(3).unwrap();
        let g = Poly::from_ints(t3.clone(), &[-1, 0, 1]);
        assert!(matches!(
            RootValuation::new(t3.clone(), g, t3.one(), 64),
            Err(XvalError::UnsupportedField { .. })
        ));
    }

    #[test]
    fn validation_flags() {
        // gamma equal to the predecessor value
        let key = Poly::from_ints(qp3(), &[-3, 1]);
        let av = AugmentedValuation::new(gauss31(), key.clone(), ExtValue::from_int(1))
            .unwrap()
            .with_certificate(KeyCertKind::Linear);
        let v = XValuation::augmented(av);
        assert!(v
            .validate()
            .violations
            .iter()
            .any(|x| matches!(x, Violation::NonIncreasingAugmentation { .. })));

        // well-formed chain
        let av = AugmentedValuation::new(gauss31(), key.clone(), ExtValue::from_int(2))
            .unwrap()
            .with_certificate(KeyCertKind::Linear);
        assert!(XValuation::augmented(av).validate().is_ok());

        // missing certificate
        let av = AugmentedValuation::new(gauss31(), key, ExtValue::from_int(2)).unwrap();
        assert!(XValuation::augmented(av)
            .validate()
            .violations
            .iter()
            .any(|x| matches!(x, Violation::MissingKeyCertificate { .. })));

        // negative gamma_x
        let v = XValuation::gauss(qp3(), ExtValue::from_int(-1));
        assert_eq!(v.validate().violations, vec![Violation::NegativeValueOfX]);
    }

    #[test]
    fn chain_description() {
        let v = gauss31();
        let chain = v.chain_describe().unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].0, Poly::x(qp3()));

        let key = Poly::from_ints(qp3(), &[-3, 1]);
        let av = AugmentedValuation::new(v, key.clone(), ExtValue::from_int(2))
            .unwrap()
            .with_certificate(KeyCertKind::Linear);
        let v = XValuation::augmented(av);
        let chain = v.chain_describe().unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[1], (key, ExtValue::from_int(2)));

        let f7 = Padic::new(7).unwrap();
        let g = Poly::from_ints(f7.clone(), &[-2, 0, 1]);
        let rv = RootValuation::new(f7.clone(), g, f7.from_int(3), 64).unwrap();
        assert_eq!(
            XValuation::root(rv).chain_describe().unwrap_err(),
            XvalError::Unsupported
        );
    }

    #[test]
    fn concurrent_root_evaluations_are_deterministic() {
        let f7 = Padic::new(7).unwrap();
        let g = Poly::from_ints(f7.clone(), &[-2, 0, 1]);
        let rv = RootValuation::new(f7.clone(), g, f7.from_int(3), 64).unwrap();
        let mut handles = Vec::new();
        for k in 0..4 {
            let rv = rv.clone();
            let f7 = f7.clone();
            handles.push(std::thread::spawn(move || {
                let f = Poly::from_ints(f7, &[-10 - 98 * k, 1]);
                rv.eval(&f).unwrap()
            }));
        }
        let got: Vec<ExtValue> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        // v(x - 10) = 2, v(x - 108) = 3 (108 = 10 + 98), deeper shifts stay at 2+
        assert_eq!(got[0], ExtValue::from_int(2));
        assert_eq!(got[1], ExtValue::from_int(3));
    }
}
