//! Reduction of the general monic polynomial of degree `n` by shifts,
//! root rescalings and root inversion, with a record that a specialization
//! oracle can replay on actual roots.

use std::cell::Cell;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::exactfield::{factor, FieldEmbedding, FieldError, Fq, FqElement, UniPoly, MAX_DEGREE};
use crate::exactfield::arith::lcm;
use crate::ratfunc::{var_names, RatFn, RatFnError, Vars};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TschirnhausError {
    #[error("the characteristic divides the degree")]
    CharDividesDegree,
    #[error("a tail coefficient vanishes identically")]
    DegenerateTail,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("the assignment hits a pole or a zero of a transformation parameter")]
    PoleAtAssignment,
    #[error("splitting field degree {0} exceeds the supported maximum")]
    SplittingTooLarge(u32),
    #[error(transparent)]
    RatFn(#[from] RatFnError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `X^n + a_1 X^{n-1} + … + a_n` with rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPoly<C: Scalar> {
    /// `coeffs[i] = a_{i+1}`.
    pub coeffs: Vec<RatFn<C>>,
}

impl<C: Scalar> GeneralPoly<C> {
    /// The general polynomial with `a_i = t_i`.
    pub fn general(n: usize, domain: &C::Domain) -> GeneralPoly<C> {
        let vars = t_vars(n);
        GeneralPoly {
            coeffs: (0..n).map(|i| RatFn::var(domain, &vars, i)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn vars(&self) -> &Vars {
        self.coeffs[0].vars()
    }

    fn domain(&self) -> &C::Domain {
        self.coeffs[0].domain()
    }

    pub fn characteristic(&self) -> u64 {
        C::characteristic(self.domain())
    }

    /// Distinct coefficient entries that are not constants.
    pub fn parameter_count(&self) -> usize {
        let mut seen: Vec<&RatFn<C>> = Vec::new();
        for c in &self.coeffs {
            if !c.is_constant() && !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen.len()
    }

    fn one(&self) -> RatFn<C> {
        RatFn::one(self.domain(), self.vars())
    }

    /// `g(X) = f(X + λ)`.
    fn shifted(&self, lambda: &RatFn<C>) -> GeneralPoly<C> {
        let n = self.degree();
        // full coefficient list c_j of X^j, c_n = 1
        let mut c = vec![self.one()];
        c.extend(self.coeffs.iter().cloned());
        c.reverse();
        let mut lam_pows = vec![self.one()];
        for k in 1..=n {
            lam_pows.push(lam_pows[k - 1].mul(lambda));
        }
        let mut out = Vec::with_capacity(n);
        for m in (0..n).rev() {
            let mut acc = RatFn::zero(self.domain(), self.vars());
            let mut binom: i64 = 1; // C(j, m) for j = m
            for j in m..=n {
                if j > m {
                    binom = binom * j as i64 / (j - m) as i64;
                }
                let term = c[j].mul(&lam_pows[j - m]).scale(&C::from_int(self.domain(), binom));
                acc = acc.add(&term);
            }
            out.push(acc);
        }
        GeneralPoly { coeffs: out }
    }

    /// `λ^{-n} g(λX)`: roots divided by `λ`.
    fn scaled(&self, lambda: &RatFn<C>) -> Result<GeneralPoly<C>, TschirnhausError> {
        let inv = lambda.inv()?;
        let mut p = self.one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                p = p.mul(&inv);
                a.mul(&p)
            })
            .collect();
        Ok(GeneralPoly { coeffs })
    }

    /// Monic reversal: roots inverted.
    fn inverted(&self) -> Result<GeneralPoly<C>, TschirnhausError> {
        let n = self.degree();
        let an = &self.coeffs[n - 1];
        if an.is_zero() {
            return Err(TschirnhausError::DegenerateTail);
        }
        let inv = an.inv()?;
        let mut coeffs: Vec<RatFn<C>> = (1..n).map(|i| self.coeffs[n - 1 - i].mul(&inv)).collect();
        coeffs.push(inv);
        Ok(GeneralPoly { coeffs })
    }

    fn apply(&self, step: &TransformStep<C>) -> Result<GeneralPoly<C>, TschirnhausError> {
        match step {
            TransformStep::Shift(l) => Ok(self.shifted(l)),
            TransformStep::ScaleRoots(l) => self.scaled(l),
            TransformStep::InvertRoot => self.inverted(),
        }
    }
}

impl<C: Scalar> fmt::Display for GeneralPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "X^{n}")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = n - 1 - i;
            let mono = match e {
                0 => String::new(),
                1 => " * X".to_string(),
                _ => format!(" * X^{e}"),
            };
            write!(f, " + ({c}){mono}")?;
        }
        Ok(())
    }
}

pub fn t_vars(n: usize) -> Vars {
    var_names("t", 1, n)
}

/// One reduction step, described by its effect on roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformStep<C: Scalar> {
    /// `g(X) = f(X + λ)`; roots move by `r ↦ r − λ`.
    Shift(RatFn<C>),
    /// `g(X) = λ^{-n} f(λX)`; roots move by `r ↦ r / λ`.
    ScaleRoots(RatFn<C>),
    /// Reversed and made monic; roots move by `r ↦ 1 / r`.
    InvertRoot,
}

impl<C: Scalar> TransformStep<C> {
    pub fn name(&self) -> &'static str {
        match self {
            TransformStep::Shift(_) => "Shift",
            TransformStep::ScaleRoots(_) => "ScaleRoots",
            TransformStep::InvertRoot => "InvertRoot",
        }
    }

    pub fn lambda(&self) -> Option<&RatFn<C>> {
        match self {
            TransformStep::Shift(l) | TransformStep::ScaleRoots(l) => Some(l),
            TransformStep::InvertRoot => None,
        }
    }
}

impl<C: Scalar> Serialize for TransformStep<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("step", self.name())?;
        if let Some(l) = self.lambda() {
            m.serialize_entry("lambda", &l.to_string())?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct TransformRecord<C: Scalar> {
    pub steps: Vec<TransformStep<C>>,
}

impl<C: Scalar> TransformRecord<C> {
    pub fn empty() -> TransformRecord<C> {
        TransformRecord { steps: Vec::new() }
    }

    fn then(mut self, other: TransformRecord<C>) -> TransformRecord<C> {
        self.steps.extend(other.steps);
        self
    }

    /// Replays the steps on a polynomial.
    pub fn apply(&self, f: &GeneralPoly<C>) -> Result<GeneralPoly<C>, TschirnhausError> {
        self.steps.iter().try_fold(f.clone(), |g, s| g.apply(s))
    }
}

/// Kills the `X^{n-1}` coefficient with `Shift(−a_1/n)`.
pub fn depress<C: Scalar>(f: &GeneralPoly<C>) -> Result<(GeneralPoly<C>, TransformRecord<C>), TschirnhausError> {
    let n = f.degree() as u64;
    let p = f.characteristic();
    if p != 0 && n % p == 0 {
        return Err(TschirnhausError::CharDividesDegree);
    }
    let n_inv = C::from_int(f.domain(), n as i64).inverse().expect("char does not divide n");
    let lambda = f.coeffs[0].scale(&n_inv).neg();
    let step = TransformStep::Shift(lambda);
    let g = f.apply(&step)?;
    Ok((g, TransformRecord { steps: vec![step] }))
}

/// Rescales roots by `λ = a_n / a_{n-1}` so the last two coefficients agree.
pub fn rescale<C: Scalar>(g: &GeneralPoly<C>) -> Result<(GeneralPoly<C>, TransformRecord<C>), TschirnhausError> {
    let n = g.degree();
    if n < 2 || g.coeffs[n - 1].is_zero() || g.coeffs[n - 2].is_zero() {
        return Err(TschirnhausError::DegenerateTail);
    }
    let lambda = g.coeffs[n - 1].div(&g.coeffs[n - 2])?;
    let step = TransformStep::ScaleRoots(lambda);
    let h = g.apply(&step)?;
    Ok((h, TransformRecord { steps: vec![step] }))
}

/// The characteristic-3 cubic: `Shift(t_2/t_1)` removes the linear term,
/// inversion moves the remaining `X²` term to `X`, and a rescale leaves
/// `X³ + cX + c`.
pub fn reduce_char3_cubic<C: Scalar>(
    domain: &C::Domain,
) -> Result<(GeneralPoly<C>, TransformRecord<C>), TschirnhausError> {
    if C::characteristic(domain) != 3 {
        return Err(TschirnhausError::Unsupported("the cubic path needs characteristic 3".into()));
    }
    let f = GeneralPoly::<C>::general(3, domain);
    let lambda = f.coeffs[1].div(&f.coeffs[0])?;
    let shift = TransformRecord {
        steps: vec![TransformStep::Shift(lambda), TransformStep::InvertRoot],
    };
    let g = shift.apply(&f)?;
    let (h, scale) = rescale(&g)?;
    Ok((h, shift.then(scale)))
}

/// Dispatch by `(n, char)`: depress then rescale when `char ∤ n`; rescale only
/// for `(2, 2)`; the cubic path for `(3, 3)`. `n = 2` with odd or zero
/// characteristic stops after depression, which already leaves one parameter.
pub fn reduce_general<C: Scalar>(
    n: usize,
    domain: &C::Domain,
) -> Result<(GeneralPoly<C>, TransformRecord<C>), TschirnhausError> {
    if n < 2 {
        return Err(TschirnhausError::Unsupported(format!("degree {n}")));
    }
    let p = C::characteristic(domain);
    let f = GeneralPoly::<C>::general(n, domain);
    match (n, p) {
        (2, 2) => rescale(&f),
        (3, 3) => reduce_char3_cubic(domain),
        _ if p != 0 && n as u64 % p == 0 => Err(TschirnhausError::Unsupported(format!(
            "degree {n} in characteristic {p}"
        ))),
        (2, _) => depress(&f),
        _ => {
            let (g, r1) = depress(&f)?;
            let (h, r2) = rescale(&g)?;
            Ok((h, r1.then(r2)))
        }
    }
}

/// Number of parameters `reduce_general` leaves.
pub fn expected_parameters(n: usize) -> usize {
    if n >= 4 {
        n - 2
    } else {
        1
    }
}

/// Specializes `f`, `h` and the record's parameters at `assignment` (values
/// of `t_1..t_n` in `field`), maps the roots of `f` through the record in a
/// splitting field, and compares them with the roots of `h` as multisets.
pub fn verify_specialization<C: Scalar>(
    f: &GeneralPoly<C>,
    h: &GeneralPoly<C>,
    record: &TransformRecord<C>,
    assignment: &[FqElement],
    field: &Fq,
) -> Result<bool, TschirnhausError> {
    let p = field.p();
    if f.characteristic() != 0 && f.characteristic() != p {
        return Err(FieldError::DomainMismatch.into());
    }
    let bad = Cell::new(false);
    let map = |c: &C| match c.reduce_mod(p) {
        Some(v) => field.from_int(v as i64),
        None => {
            bad.set(true);
            field.zero()
        }
    };
    let eval = |r: &RatFn<C>| -> Result<FqElement, TschirnhausError> {
        let v = r
            .evaluate_mapped(assignment, &map)
            .map_err(|_| TschirnhausError::PoleAtAssignment)?;
        if bad.get() {
            return Err(TschirnhausError::PoleAtAssignment);
        }
        Ok(v)
    };
    let to_poly = |g: &GeneralPoly<C>| -> Result<UniPoly, TschirnhausError> {
        let mut cs: Vec<FqElement> = g.coeffs.iter().map(&eval).collect::<Result<_, _>>()?;
        cs.reverse();
        cs.push(field.one());
        Ok(UniPoly::new(field, cs))
    };
    let fp = to_poly(f)?;
    let hp = to_poly(h)?;
    let mut lambdas = Vec::with_capacity(record.steps.len());
    for s in &record.steps {
        let l = s.lambda().map(&eval).transpose()?;
        if matches!(s, TransformStep::ScaleRoots(_)) && l.as_ref().is_some_and(|x| x.is_zero()) {
            return Err(TschirnhausError::PoleAtAssignment);
        }
        lambdas.push(l);
    }
    // splitting field of f
    let deg = factor(&fp)
        .iter()
        .fold(1u64, |a, (g, _)| lcm(a, g.degree().unwrap_or(1) as u64));
    let k = field.k() as u64 * deg;
    if k > MAX_DEGREE as u64 {
        return Err(TschirnhausError::SplittingTooLarge(k as u32));
    }
    let ext = Fq::new(p, k as u32)?;
    let emb = FieldEmbedding::new(field, &ext)?;
    let lift = |g: &UniPoly| UniPoly::new(&ext, g.coeffs().iter().map(|c| emb.map(c)).collect());
    let mut mapped: Vec<FqElement> = Vec::new();
    for mut r in roots_with_multiplicity(&lift(&fp)) {
        for (s, l) in record.steps.iter().zip(&lambdas) {
            let l = l.as_ref().map(|x| emb.map(x));
            r = match s {
                TransformStep::Shift(_) => r.minus(&l.unwrap()),
                TransformStep::ScaleRoots(_) => r.divided(&l.unwrap()).unwrap(),
                TransformStep::InvertRoot => match r.inverse() {
                    Some(x) => x,
                    None => return Err(TschirnhausError::PoleAtAssignment),
                },
            };
        }
        mapped.push(r);
    }
    let target = roots_with_multiplicity(&lift(&hp));
    Ok(multiset(&mapped) == multiset(&target) && mapped.len() == f.degree())
}

/// Outcome of [`verify_random`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationReport {
    pub n: usize,
    pub characteristic: u64,
    pub seed: u64,
    /// Field the parameters are drawn from.
    pub field: String,
    pub parameters: usize,
    pub admissible: usize,
    pub passed: usize,
    /// Draws rejected for hitting a pole or a vanishing parameter.
    pub rejected: usize,
}

impl SpecializationReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.admissible
    }
}

/// Prime used to model characteristic 0 in [`verify_random`].
pub const CHAR0_MODEL_PRIME: u64 = 10007;

/// Reduces the general degree-`n` polynomial in characteristic `char`
/// (0 for `Q`) and checks `trials` admissible random assignments drawn
/// from `F_p` (`F_10007` for `Q`) with a ChaCha8 stream seeded by `seed`.
/// Prime fields keep every splitting field for `n ≤ 7` within
/// [`MAX_DEGREE`].
pub fn verify_random(
    n: usize,
    char: u64,
    trials: usize,
    seed: u64,
) -> Result<SpecializationReport, TschirnhausError> {
    if char == 0 {
        let field = Fq::new(CHAR0_MODEL_PRIME, 1)?;
        run_random::<crate::Rational>(n, char, &(), &field, trials, seed)
    } else {
        let field = Fq::new(char, 1)?;
        run_random::<FqElement>(n, char, &field.clone(), &field, trials, seed)
    }
}

fn run_random<C: Scalar>(
    n: usize,
    char: u64,
    domain: &C::Domain,
    field: &Fq,
    trials: usize,
    seed: u64,
) -> Result<SpecializationReport, TschirnhausError> {
    use rand::SeedableRng;
    let (h, record) = reduce_general::<C>(n, domain)?;
    let f = GeneralPoly::<C>::general(n, domain);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = SpecializationReport {
        n,
        characteristic: char,
        seed,
        field: field.to_string(),
        parameters: h.parameter_count(),
        admissible: 0,
        passed: 0,
        rejected: 0,
    };
    // tiny fields can have few admissible points; bound the number of draws
    let max_draws = 1000 * trials.max(1);
    while report.admissible < trials && report.admissible + report.rejected < max_draws {
        let t: Vec<FqElement> = (0..n).map(|_| field.random(&mut rng)).collect();
        match verify_specialization(&f, &h, &record, &t, field) {
            Ok(ok) => {
                report.admissible += 1;
                report.passed += ok as usize;
            }
            Err(TschirnhausError::PoleAtAssignment) => report.rejected += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn roots_with_multiplicity(f: &UniPoly) -> Vec<FqElement> {
    factor(f)
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .flat_map(|(g, e)| std::iter::repeat(g.coeff(0).negated()).take(e as usize))
        .collect()
}

fn multiset(xs: &[FqElement]) -> HashMap<&FqElement, usize> {
    let mut m = HashMap::new();
    for x in xs {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}
