//! Sparse multivariate Laurent polynomials with half-integer exponents and
//! exact coefficients.
//!
//! Exponents are stored in half-units (the stored integer is twice the
//! exponent), so sigma-based and square-root-based exponents stay exact.
//! The coefficient scalar is generic; the crate root fixes `BigInt`.

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring bound: signed exact integers (i64, i128, BigInt, ...).
pub trait Coefficient:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Signed
    + num_integer::Integer
    + num_traits::NumAssignOps
    + ToPrimitive
    + From<i64>
{
}

impl<T> Coefficient for T where
    T: Clone
        + Eq
        + Ord
        + Hash
        + Debug
        + Display
        + Signed
        + num_integer::Integer
        + num_traits::NumAssignOps
        + ToPrimitive
        + From<i64>
{
}

/// A fixed, ordered list of variable names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarList(Arc<[String]>);

impl VarList {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarList(names.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Exponent vector in half-units, ordered graded-lex (total half-degree,
/// then entries); the map iteration order is the canonical term order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mono(Box<[i32]>);

impl Mono {
    fn total(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn halves(&self) -> &[i32] {
        &self.0
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Image of a variable under a monomial substitution: a sign times a
/// monomial over the target variable list, exponents in half-units.
#[derive(Clone, Debug)]
pub struct MonomialImage {
    pub negative: bool,
    pub halves: Vec<i32>,
}

impl MonomialImage {
    pub fn var(target: &VarList, idx: usize) -> Self {
        let mut halves = vec![0; target.len()];
        halves[idx] = 2;
        MonomialImage { negative: false, halves }
    }

    pub fn constant_one(target: &VarList) -> Self {
        MonomialImage { negative: false, halves: vec![0; target.len()] }
    }

    pub fn monomial(target: &VarList, powers: &[(usize, i32)]) -> Self {
        let mut halves = vec![0; target.len()];
        for &(idx, h) in powers {
            halves[idx] += h;
        }
        MonomialImage { negative: false, halves }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentHalfPoly<C: Coefficient> {
    vars: VarList,
    terms: BTreeMap<Mono, C>,
}

impl<C: Coefficient> LaurentHalfPoly<C> {
    pub fn zero(vars: &VarList) -> Self {
        LaurentHalfPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarList, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; vars.len()].into()), c);
        }
        p
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, C::one())
    }

    /// The variable at `idx`, to the first power.
    pub fn var(vars: &VarList, idx: usize) -> Self {
        Self::monomial(vars, C::one(), &[(idx, 2)])
    }

    /// `coeff * prod vars[i]^(halves_i / 2)`.
    pub fn monomial(vars: &VarList, coeff: C, powers: &[(usize, i32)]) -> Self {
        let mut p = Self::zero(vars);
        if coeff.is_zero() {
            return p;
        }
        let mut halves = vec![0i32; vars.len()];
        for &(idx, h) in powers {
            halves[idx] += h;
        }
        p.terms.insert(Mono(halves.into()), coeff);
        p
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    /// Exponents are all integral (every half-unit even).
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|h| h % 2 == 0))
    }

    /// No negative exponent anywhere.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&h| h >= 0))
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch)
        }
    }

    fn insert_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentHalfPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let halves: Vec<i32> = m1
                    .0
                    .iter()
                    .zip(m2.0.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                out.insert_term(Mono(halves.into()), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentHalfPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiply by a single monomial with half-unit exponents.
    pub fn mul_monomial(&self, powers: &[(usize, i32)]) -> Self {
        let mut shift = vec![0i32; self.vars.len()];
        for &(idx, h) in powers {
            shift[idx] += h;
        }
        LaurentHalfPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let halves: Vec<i32> =
                        m.0.iter().zip(shift.iter()).map(|(a, b)| a + b).collect();
                    (Mono(halves.into()), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::NegativePower);
        }
        let mut out = Self::one(&self.vars);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Monomial substitution: variable i is replaced by
    /// `(-1)^negative_i * prod target_j^(halves_ij / 2)`.
    ///
    /// A sign raised to a non-integral power is an error, as is a resulting
    /// quarter-unit exponent.
    pub fn substitute(&self, target: &VarList, images: &[MonomialImage]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::VarMismatch);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut quarter = vec![0i64; target.len()];
            let mut flip = false;
            for (i, &h) in m.0.iter().enumerate() {
                if h == 0 {
                    continue;
                }
                let img = &images[i];
                if img.negative {
                    if h % 2 != 0 {
                        return Err(Error::FractionalSign);
                    }
                    if (h / 2) % 2 != 0 {
                        flip = !flip;
                    }
                }
                for (j, &ih) in img.halves.iter().enumerate() {
                    quarter[j] += h as i64 * ih as i64;
                }
            }
            let mut halves = Vec::with_capacity(target.len());
            for (j, &q) in quarter.iter().enumerate() {
                if q % 2 != 0 {
                    return Err(Error::NonIntegralExponent(target.names()[j].clone()));
                }
                halves.push(i32::try_from(q / 2).map_err(|_| Error::NonIntegralExponent(
                    target.names()[j].clone(),
                ))?);
            }
            let coeff = if flip { -c.clone() } else { c.clone() };
            out.insert_term(Mono(halves.into()), coeff);
        }
        Ok(out)
    }

    /// Replace each variable v_i by (u_i + shift) over `target`, expanding
    /// binomially. Requires nonnegative integral exponents throughout.
    pub fn expand_shift(&self, target: &VarList, shift: i64) -> Result<Self> {
        if target.len() != self.vars.len() {
            return Err(Error::VarMismatch);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &h) in m.0.iter().enumerate() {
                if h == 0 {
                    continue;
                }
                if h % 2 != 0 {
                    return Err(Error::NonIntegralExponent(self.vars.names()[i].clone()));
                }
                if h < 0 {
                    return Err(Error::NegativeShiftExponent);
                }
                let base = Self::var(target, i)
                    .add(&Self::constant(target, C::from(shift)))?;
                term = term.mul(&base.pow((h / 2) as i64)?)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Drop the variable `idx` by setting it to zero: terms with a positive
    /// exponent vanish; a negative exponent is an error. The result is over
    /// `target`, which must be `vars` minus that variable.
    pub fn set_var_zero(&self, target: &VarList, idx: usize) -> Result<Self> {
        if target.len() + 1 != self.vars.len() {
            return Err(Error::VarMismatch);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let h = m.0[idx];
            if h > 0 {
                continue;
            }
            if h < 0 {
                return Err(Error::ZeroToNegative);
            }
            let halves: Vec<i32> = m
                .0
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != idx)
                .map(|(_, &v)| v)
                .collect();
            out.insert_term(Mono(halves.into()), c.clone());
        }
        Ok(out)
    }

    /// Exact rational evaluation; all exponents must be integral.
    pub fn eval(&self, point: &[Ratio<C>]) -> Result<Ratio<C>> {
        if point.len() != self.vars.len() {
            return Err(Error::VarMismatch);
        }
        let mut acc: Ratio<C> = Ratio::zero();
        for (m, c) in &self.terms {
            let mut t = Ratio::from_integer(c.clone());
            for (i, &h) in m.0.iter().enumerate() {
                if h == 0 {
                    continue;
                }
                if h % 2 != 0 {
                    return Err(Error::NonIntegralExponent(self.vars.names()[i].clone()));
                }
                let e = h / 2;
                let base = &point[i];
                if base.is_zero() {
                    if e < 0 {
                        return Err(Error::ZeroToNegative);
                    }
                    t = Ratio::zero();
                    continue;
                }
                let powed = pow_ratio(base, e);
                t *= powed;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation; half exponents use square roots, so
    /// negative bases with half exponents are rejected.
    pub fn eval_float(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.vars.len() {
            return Err(Error::VarMismatch);
        }
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (i, &h) in m.0.iter().enumerate() {
                if h == 0 {
                    continue;
                }
                let base = point[i];
                if base == 0.0 && h < 0 {
                    return Err(Error::ZeroToNegative);
                }
                if base < 0.0 && h % 2 != 0 {
                    return Err(Error::NegativeBaseHalfPower);
                }
                t *= base.powf(h as f64 / 2.0);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Deterministic text form: terms in descending graded-lex order, half
    /// exponents printed as `^(k/2)`.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_mono(&self.vars, m);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs == C::one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }

    /// Machine-readable term list: one `coeff h_1 h_2 ...` line per term,
    /// exponents as half-units (actual exponent = printed value / 2).
    pub fn term_lines(&self) -> String {
        let mut out = format!("# vars: {}\n", self.vars.names().join(" "));
        for (m, c) in self.terms.iter().rev() {
            out.push_str(&c.to_string());
            for &h in m.0.iter() {
                out.push(' ');
                out.push_str(&h.to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn pow_ratio<C: Coefficient>(base: &Ratio<C>, e: i32) -> Ratio<C> {
    let mut acc: Ratio<C> = Ratio::from_integer(C::one());
    for _ in 0..e.unsigned_abs() {
        acc *= base.clone();
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn render_mono(vars: &VarList, m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, &h) in m.halves().iter().enumerate() {
        if h == 0 {
            continue;
        }
        let name = &vars.names()[i];
        if h == 2 {
            parts.push(name.clone());
        } else if h % 2 == 0 {
            let e = h / 2;
            if e > 0 {
                parts.push(format!("{name}^{e}"));
            } else {
                parts.push(format!("{name}^({e})"));
            }
        } else {
            parts.push(format!("{name}^({h}/2)"));
        }
    }
    parts.join("*")
}

impl<C: Coefficient> Debug for LaurentHalfPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl<C: Coefficient> Display for LaurentHalfPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentHalfPoly<i64>;

    fn wxy() -> VarList {
        VarList::new(["w", "x", "y"])
    }

    #[test]
    fn binomial_square() {
        let v = wxy();
        // (x + wy)^2 = x^2 + 2wxy + w^2y^2
        let x = P::var(&v, 1);
        let wy = P::monomial(&v, 1, &[(0, 2), (2, 2)]);
        let p = x.add(&wy).unwrap().pow(2).unwrap();
        let expect = P::monomial(&v, 1, &[(1, 4)])
            .add(&P::monomial(&v, 2, &[(0, 2), (1, 2), (2, 2)]))
            .unwrap()
            .add(&P::monomial(&v, 1, &[(0, 4), (2, 4)]))
            .unwrap();
        assert_eq!(p, expect);
        assert_eq!(p.canonical_string(), "w^2*y^2 + 2*w*x*y + x^2");
    }

    #[test]
    fn half_exponents_multiply() {
        let v = VarList::new(["w"]);
        let half = P::monomial(&v, 1, &[(0, 1)]);
        let w = half.mul(&half).unwrap();
        assert_eq!(w, P::var(&v, 0));
        assert_eq!(half.canonical_string(), "w^(1/2)");
    }

    #[test]
    fn additive_inverse_is_zero() {
        let v = wxy();
        let p = P::var(&v, 0)
            .add(&P::monomial(&v, 3, &[(1, 2), (2, -2)]))
            .unwrap();
        let z = p.add(&p.neg()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.canonical_string(), "0");
    }

    #[test]
    fn substitute_examples() {
        let v2 = VarList::new(["x", "y"]);
        // x^2 under x -> xy
        let p = P::monomial(&v2, 1, &[(0, 4)]);
        let images = [
            MonomialImage::monomial(&v2, &[(0, 2), (1, 2)]),
            MonomialImage::var(&v2, 1),
        ];
        let q = p.substitute(&v2, &images).unwrap();
        assert_eq!(q, P::monomial(&v2, 1, &[(0, 4), (1, 4)]));

        // z -> x^(-1/2) y^(-1/2)
        let vz = VarList::new(["z"]);
        let z = P::var(&vz, 0);
        let img = [MonomialImage::monomial(&v2, &[(0, -1), (1, -1)])];
        let q = z.substitute(&v2, &img).unwrap();
        assert_eq!(q, P::monomial(&v2, 1, &[(0, -1), (1, -1)]));

        // swap symmetry: xy under x->y, y->x is xy
        let xy = P::monomial(&v2, 1, &[(0, 2), (1, 2)]);
        let swap = [MonomialImage::var(&v2, 1), MonomialImage::var(&v2, 0)];
        assert_eq!(xy.substitute(&v2, &swap).unwrap(), xy);

        // sign to a half power errors
        let vs = VarList::new(["s"]);
        let sqrt_s = P::monomial(&vs, 1, &[(0, 1)]);
        let neg_image = [MonomialImage { negative: true, halves: vec![2] }];
        assert!(matches!(
            sqrt_s.substitute(&vs, &neg_image),
            Err(Error::FractionalSign)
        ));
    }

    #[test]
    fn shift_expansion() {
        let st = VarList::new(["s", "t"]);
        let xy = VarList::new(["x", "y"]);
        // s -> x - 1
        let s = P::var(&st, 0);
        let p = s.expand_shift(&xy, -1).unwrap();
        let expect = P::var(&xy, 0).add(&P::constant(&xy, -1)).unwrap();
        assert_eq!(p, expect);

        // s*t -> xy - x - y + 1
        let sts = P::monomial(&st, 1, &[(0, 2), (1, 2)]);
        let p = sts.expand_shift(&xy, -1).unwrap();
        let expect = P::monomial(&xy, 1, &[(0, 2), (1, 2)])
            .add(&P::monomial(&xy, -1, &[(0, 2)]))
            .unwrap()
            .add(&P::monomial(&xy, -1, &[(1, 2)]))
            .unwrap()
            .add(&P::one(&xy))
            .unwrap();
        assert_eq!(p, expect);

        // s^(1/2) cannot be expanded
        let sqrt = P::monomial(&st, 1, &[(0, 1)]);
        assert!(sqrt.expand_shift(&xy, -1).is_err());

        // round trip: expand with -1 then +1 recovers the original
        let p = P::monomial(&st, 3, &[(0, 4), (1, 2)])
            .add(&P::monomial(&st, -2, &[(1, 6)]))
            .unwrap();
        let round = p
            .expand_shift(&xy, -1)
            .unwrap()
            .expand_shift(&st, 1)
            .unwrap();
        assert_eq!(round, p);
    }

    #[test]
    fn eval_examples() {
        let v = wxy();
        let x = P::var(&v, 1);
        let wy = P::monomial(&v, 1, &[(0, 2), (2, 2)]);
        let p = x.add(&wy).unwrap().pow(2).unwrap();
        let point = [
            Ratio::from_integer(1i64),
            Ratio::from_integer(2),
            Ratio::from_integer(3),
        ];
        assert_eq!(p.eval(&point).unwrap(), Ratio::from_integer(25));

        let vw = VarList::new(["w"]);
        let half = P::monomial(&vw, 1, &[(0, 1)]);
        assert!(half.eval(&[Ratio::from_integer(2i64)]).is_err());
        assert!((half.eval_float(&[4.0]).unwrap() - 2.0).abs() < 1e-12);

        let inv = P::monomial(&vw, 1, &[(0, -2)]);
        assert!(inv.eval(&[Ratio::from_integer(0i64)]).is_err());
        assert_eq!(
            inv.eval(&[Ratio::new(1i64, 4)]).unwrap(),
            Ratio::from_integer(4)
        );
    }

    #[test]
    fn canonical_strings() {
        let v = wxy();
        assert_eq!(P::zero(&v).canonical_string(), "0");
        let a = P::var(&v, 0).add(&P::var(&v, 1)).unwrap();
        let b = P::var(&v, 1).add(&P::var(&v, 0)).unwrap();
        assert_eq!(a.canonical_string(), b.canonical_string());
        assert_eq!(a.canonical_string(), "w + x");
        let frac = P::monomial(&v, 1, &[(1, 3)]);
        assert_eq!(frac.canonical_string(), "x^(3/2)");
        let negexp = P::monomial(&v, -2, &[(1, -2)]);
        assert_eq!(negexp.canonical_string(), "-2*x^(-1)");
    }

    #[test]
    fn set_var_zero_works() {
        let wxzy = VarList::new(["w", "x", "z", "y"]);
        let wxy = VarList::new(["w", "x", "y"]);
        let p = P::monomial(&wxzy, 1, &[(0, 2)])
            .add(&P::monomial(&wxzy, 5, &[(2, 2), (3, 2)]))
            .unwrap();
        let q = p.set_var_zero(&wxy, 2).unwrap();
        assert_eq!(q, P::var(&wxy, 0));
    }
}
