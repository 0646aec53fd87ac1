//! Exact arithmetic in the real cyclotomic field `Q(beta)`, `beta = 2cos(pi/L)`.
//!
//! Elements are polynomial residues modulo the minimal polynomial of `beta`,
//! with arbitrary-precision rational coefficients. The minimal polynomial is
//! computed exactly from the cyclotomic polynomial `Phi_{2L}` by the palindrome
//! descent `Phi_{2L}(x) = x^m psi(x + 1/x)`. Signs of nonzero elements are
//! decided by interval refinement around an isolating interval for `beta`,
//! which terminates because a nonzero residue modulo an irreducible polynomial
//! cannot vanish at `beta`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{CoreError, Result};

pub type Rat = BigRational;

fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Sign of a real algebraic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

// ---------------------------------------------------------------------------
// dense polynomial helpers over BigRational (internal)
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_is_zero(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if poly_is_zero(a) || poly_is_zero(b) {
        return vec![Rat::zero()];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Remainder of `a` modulo a monic polynomial `m`.
fn poly_rem(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    let deg_m = m.len() - 1;
    let mut r: Vec<Rat> = a.to_vec();
    poly_trim(&mut r);
    while r.len() > deg_m {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - 1 - deg_m;
        if !lead.is_zero() {
            for (i, mi) in m.iter().enumerate() {
                let idx = i + shift;
                let t = &lead * mi;
                r[idx] -= t;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r.resize(deg_m.max(1), Rat::zero());
    r
}

/// Pseudo Euclidean algorithm returning `u` with `a*u = gcd (mod m)`;
/// valid for `m` irreducible and `a` a nonzero residue, where gcd is a unit.
fn poly_inverse_mod(a: &[Rat], m: &[Rat]) -> Option<Vec<Rat>> {
    // extended Euclid over Q[x]
    let mut r0: Vec<Rat> = m.to_vec();
    let mut r1: Vec<Rat> = a.to_vec();
    poly_trim(&mut r1);
    if poly_is_zero(&r1) {
        return None;
    }
    let mut s0 = vec![Rat::zero()];
    let mut s1 = vec![Rat::one()];
    while !poly_is_zero(&r1) && r1.len() > 1 {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if poly_is_zero(&r1) {
        return None; // a shares a factor with m; cannot happen for irreducible m
    }
    // r1 is a nonzero constant c: inverse is s1 / c
    let c = r1[0].clone();
    let inv: Vec<Rat> = s1.iter().map(|x| x / &c).collect();
    Some(poly_rem(&inv, m))
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in out.iter_mut().enumerate() {
        let av = a.get(i).cloned().unwrap_or_else(Rat::zero);
        let bv = b.get(i).cloned().unwrap_or_else(Rat::zero);
        *c = av - bv;
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r: Vec<Rat> = a.to_vec();
    poly_trim(&mut r);
    let mut bb: Vec<Rat> = b.to_vec();
    poly_trim(&mut bb);
    let deg_b = bb.len() - 1;
    let lead_b = bb.last().unwrap().clone();
    if r.len() <= deg_b {
        return (vec![Rat::zero()], r);
    }
    let mut q = vec![Rat::zero(); r.len() - deg_b];
    while r.len() > deg_b && !poly_is_zero(&r) {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - 1 - deg_b;
        let coef = &lead / &lead_b;
        q[shift] = coef.clone();
        for (i, bi) in bb.iter().enumerate() {
            let t = &coef * bi;
            r[i + shift] -= t;
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

fn poly_eval(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_derivative(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return vec![Rat::zero()];
    }
    let mut out = Vec::with_capacity(p.len() - 1);
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c * rat(i as i64));
    }
    out
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials over BigInt-as-rational
// ---------------------------------------------------------------------------

/// `Phi_n` as a monic polynomial with (integer) rational coefficients.
fn cyclotomic(n: u64) -> Vec<Rat> {
    // x^n - 1 divided by all Phi_d for proper divisors d of n
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic(d);
            let (q, r) = poly_divmod(&num, &phi_d);
            debug_assert!(poly_is_zero(&r));
            num = q;
        }
    }
    num
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64
}

// ---------------------------------------------------------------------------
// field context
// ---------------------------------------------------------------------------

/// The field `Q(2cos(pi/L))` with its minimal polynomial and a shrinking
/// isolating interval for the generator (used only for sign determination).
pub struct FieldContext {
    order: u64,
    minpoly: Vec<Rat>,
    degree: usize,
    sturm: Vec<Vec<Rat>>,
    isolation: Mutex<(Rat, Rat)>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldContext(L={}, degree={})", self.order, self.degree)
    }
}

pub type Ctx = Arc<FieldContext>;

/// Builds the context for `Q(2cos(pi/L))`.
pub fn make_context(order: u64) -> Result<Ctx> {
    if order == 0 {
        return Err(CoreError::InvalidInput("context order must be >= 1".into()));
    }
    let minpoly = if order == 1 {
        // 2cos(pi) = -2
        vec![rat(2), rat(1)]
    } else {
        // Phi_{2L}(x) = x^m psi(x + 1/x) with m = phi(2L)/2; extract psi.
        let n = 2 * order;
        let phi = cyclotomic(n);
        let def = euler_phi(n);
        debug_assert!(def % 2 == 0);
        let m = (def / 2) as usize;
        let mut p = phi;
        let mut psi = vec![Rat::zero(); m + 1];
        // descend: subtract c_k * x^(m-k) (x^2+1)^k for k = m..0
        let x2p1 = vec![rat(1), rat(0), rat(1)];
        for k in (0..=m).rev() {
            let c = p.get(m + k).cloned().unwrap_or_else(Rat::zero);
            psi[k] = c.clone();
            if !c.is_zero() {
                let mut t = vec![Rat::zero(); m - k + 1];
                t[m - k] = c;
                let mut pw = vec![Rat::one()];
                for _ in 0..k {
                    pw = poly_mul(&pw, &x2p1);
                }
                let term = poly_mul(&t, &pw);
                p = poly_sub(&p, &term);
            }
        }
        if !poly_is_zero(&p) {
            return Err(CoreError::Internal(
                "palindrome descent of cyclotomic polynomial left a remainder".into(),
            ));
        }
        psi
    };
    let degree = minpoly.len() - 1;
    // Sturm chain for root isolation
    let mut sturm = vec![minpoly.clone(), poly_derivative(&minpoly)];
    loop {
        let k = sturm.len();
        let (_, mut r) = poly_divmod(&sturm[k - 2], &sturm[k - 1]);
        if poly_is_zero(&r) {
            break;
        }
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        sturm.push(r);
        if sturm.last().unwrap().len() == 1 {
            break;
        }
    }
    let ctx = FieldContext {
        order,
        minpoly,
        degree,
        sturm,
        isolation: Mutex::new((rat(-3), rat(3))),
    };
    ctx.isolate_largest_root();
    Ok(Arc::new(ctx))
}

impl FieldContext {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_polynomial(&self) -> &[Rat] {
        &self.minpoly
    }

    fn sign_variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.sturm {
            let v = poly_eval(p, x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if let Some(l) = last {
                if l != pos {
                    count += 1;
                }
            }
            last = Some(pos);
        }
        count
    }

    /// Number of roots of the minimal polynomial in the half-open interval `(a, b]`.
    fn roots_in(&self, a: &Rat, b: &Rat) -> usize {
        self.sign_variations(a) - self.sign_variations(b)
    }

    /// Shrinks `(lo, hi]` to contain only the largest root (which is `beta`,
    /// because conjugates of `2cos(pi/L)` are `2cos(k pi / L)` with
    /// `gcd(k, 2L) = 1`, and `k = 1` gives the largest value).
    fn isolate_largest_root(&self) {
        let mut iv = self.isolation.lock().unwrap();
        let (mut lo, mut hi) = iv.clone();
        while self.roots_in(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / rat(2);
            if self.roots_in(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        debug_assert_eq!(self.roots_in(&lo, &hi), 1);
        *iv = (lo, hi);
    }

    fn refine(&self) {
        let mut iv = self.isolation.lock().unwrap();
        let (lo, hi) = iv.clone();
        let mid = (&lo + &hi) / rat(2);
        if self.roots_in(&mid, &hi) == 1 {
            *iv = (mid, hi);
        } else {
            *iv = (lo, mid);
        }
    }

    fn interval(&self) -> (Rat, Rat) {
        self.isolation.lock().unwrap().clone()
    }

    fn same(a: &Ctx, b: &Ctx) -> bool {
        Arc::ptr_eq(a, b) || a.order == b.order
    }
}

// ---------------------------------------------------------------------------
// field elements
// ---------------------------------------------------------------------------

/// An element of `Q(2cos(pi/L))`, stored as the canonical residue of a
/// polynomial in the generator modulo the minimal polynomial.
#[derive(Clone)]
pub struct CycReal {
    ctx: Ctx,
    coeffs: Vec<Rat>,
}

impl fmt::Debug for CycReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycReal[L={}]{:?}", self.ctx.order, self.coeffs)
    }
}

impl PartialEq for CycReal {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(FieldContext::same(&self.ctx, &other.ctx));
        self.coeffs == other.coeffs
    }
}

impl Eq for CycReal {}

impl Hash for CycReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for c in &self.coeffs {
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

impl CycReal {
    fn make(ctx: &Ctx, mut coeffs: Vec<Rat>) -> Self {
        coeffs.resize(ctx.degree.max(1), Rat::zero());
        CycReal { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::make(ctx, vec![])
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_rational(ctx, Rat::one())
    }

    pub fn from_rational(ctx: &Ctx, q: Rat) -> Self {
        Self::make(ctx, vec![q])
    }

    pub fn from_int(ctx: &Ctx, n: i64) -> Self {
        Self::from_rational(ctx, rat(n))
    }

    /// The generator `beta = 2cos(pi/L)`.
    pub fn generator(ctx: &Ctx) -> Self {
        if ctx.degree == 1 {
            // beta is rational: beta = -minpoly[0]
            Self::from_rational(ctx, -ctx.minpoly[0].clone())
        } else {
            Self::make(ctx, vec![Rat::zero(), Rat::one()])
        }
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycReal { ctx: self.ctx.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycReal { ctx: self.ctx.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a.clone()).collect();
        CycReal { ctx: self.ctx.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.ctx.degree == 1 {
            return Self::from_rational(&self.ctx, &self.coeffs[0] * &other.coeffs[0]);
        }
        let raw = poly_mul(&self.coeffs, &other.coeffs);
        let red = poly_rem(&raw, &self.ctx.minpoly);
        Self::make(&self.ctx, red)
    }

    pub fn mul_rat(&self, q: &Rat) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * q).collect();
        CycReal { ctx: self.ctx.clone(), coeffs }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.ctx.degree == 1 {
            return Some(Self::from_rational(&self.ctx, self.coeffs[0].recip()));
        }
        let inv = poly_inverse_mod(&self.coeffs, &self.ctx.minpoly)?;
        Some(Self::make(&self.ctx, inv))
    }

    /// Exact sign via the isolating interval of the generator, refined until
    /// the interval image of the residue polynomial excludes zero.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if self.ctx.degree == 1 || self.coeffs[1..].iter().all(|c| c.is_zero()) {
            return if self.coeffs[0].is_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            };
        }
        loop {
            let (lo, hi) = self.ctx.interval();
            let (vlo, vhi) = interval_eval(&self.coeffs, &lo, &hi);
            if vlo.is_positive() {
                return Sign::Positive;
            }
            if vhi.is_negative() {
                return Sign::Negative;
            }
            self.ctx.refine();
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }
}

/// Horner evaluation of `p` over the interval `[lo, hi]` with outward rounding
/// on products; returns an interval containing `p([lo, hi])`.
fn interval_eval(p: &[Rat], lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut alo = Rat::zero();
    let mut ahi = Rat::zero();
    for c in p.iter().rev() {
        // multiply accumulated interval by [lo, hi]
        let cands = [&alo * lo, &alo * hi, &ahi * lo, &ahi * hi];
        let mut nlo = cands[0].clone();
        let mut nhi = cands[0].clone();
        for v in &cands[1..] {
            if *v < nlo {
                nlo = v.clone();
            }
            if *v > nhi {
                nhi = v.clone();
            }
        }
        alo = nlo + c;
        ahi = nhi + c;
    }
    (alo, ahi)
}

/// `cos(pi/m)` as an element of the context field. Requires `m | L` (or that
/// the value is rational, i.e. `m <= 3`).
pub fn cos_pi_over(ctx: &Ctx, m: u64) -> Result<CycReal> {
    if m == 0 {
        return Err(CoreError::LabelOutsideContext(m));
    }
    if ctx.order % m == 0 {
        // 2cos(pi/m) = V_{L/m}(beta) with V_0 = 2, V_1 = y, V_{k+1} = y V_k - V_{k-1}
        let k = ctx.order / m;
        let beta = CycReal::generator(ctx);
        let mut v0 = CycReal::from_int(ctx, 2);
        let mut v1 = beta.clone();
        let twice = match k {
            0 => v0,
            1 => v1,
            _ => {
                for _ in 1..k {
                    let next = beta.mul(&v1).sub(&v0);
                    v0 = v1;
                    v1 = next;
                }
                v1
            }
        };
        return Ok(twice.mul_rat(&(rat(1) / rat(2))));
    }
    match m {
        1 => Ok(CycReal::from_int(ctx, -1)),
        2 => Ok(CycReal::zero(ctx)),
        3 => Ok(CycReal::from_rational(ctx, rat(1) / rat(2))),
        _ => Err(CoreError::LabelOutsideContext(m)),
    }
}

/// Least common multiple of the labels that force field extensions; labels of
/// 1, 2 or 3 contribute rational cosines and need no extension.
pub fn context_order_for_labels<I: IntoIterator<Item = u64>>(labels: I) -> u64 {
    let mut l = 1u64;
    for m in labels {
        if m >= 4 {
            l = num_integer::lcm(l, m);
        }
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minpoly_small_orders() {
        // L=3 -> x - 1, since 2cos(pi/3) = 1
        let c3 = make_context(3).unwrap();
        assert_eq!(c3.degree(), 1);
        assert_eq!(c3.minimal_polynomial(), &[rat(-1), rat(1)]);
        // L=4 -> x^2 - 2
        let c4 = make_context(4).unwrap();
        assert_eq!(c4.degree(), 2);
        assert_eq!(c4.minimal_polynomial(), &[rat(-2), rat(0), rat(1)]);
        // L=1 -> x + 2
        let c1 = make_context(1).unwrap();
        assert_eq!(c1.minimal_polynomial(), &[rat(2), rat(1)]);
    }

    #[test]
    fn minpoly_degree_l60() {
        // oracle: phi(120)/2 by brute-force gcd counting
        let expect = (1..=120).filter(|k| num_integer::gcd(*k, 120u64) == 1).count() / 2;
        assert_eq!(expect, 16);
        let c = make_context(60).unwrap();
        assert_eq!(c.degree(), 16);
    }

    #[test]
    fn cos_values() {
        let c12 = make_context(12).unwrap();
        assert!(cos_pi_over(&c12, 2).unwrap().is_zero());
        let third = cos_pi_over(&c12, 3).unwrap();
        assert_eq!(third, CycReal::from_rational(&c12, rat(1) / rat(2)));
        // labels not dividing the order and not rational are rejected
        assert!(cos_pi_over(&c12, 5).is_err());
    }

    #[test]
    fn cos_pi_over_5_quadratic_identity() {
        // 4 cos(pi/5)^2 - 2 cos(pi/5) - 1 = 0, exactly in the field
        let c5 = make_context(5).unwrap();
        let c = cos_pi_over(&c5, 5).unwrap();
        let four = CycReal::from_int(&c5, 4);
        let two = CycReal::from_int(&c5, 2);
        let one = CycReal::one(&c5);
        let expr = four.mul(&c).mul(&c).sub(&two.mul(&c)).sub(&one);
        assert!(expr.is_zero());
    }

    #[test]
    fn sign_examples() {
        let c20 = make_context(20).unwrap();
        assert_eq!(CycReal::zero(&c20).sign(), Sign::Zero);
        // cos(pi/4) - cos(pi/3) > 0
        let d = cos_pi_over(&c20, 4)
            .unwrap()
            .sub(&cos_pi_over(&c20, 3).unwrap());
        assert_eq!(d.sign(), Sign::Positive);
        assert_eq!(d.neg().sign(), Sign::Negative);
    }

    #[test]
    fn product_identity_2cos() {
        // 2cos(pi/5) * 2cos(2pi/5) - 1 = 0; 2cos(2pi/5) = beta^2 - 2 at beta = 2cos(pi/5)
        let c5 = make_context(5).unwrap();
        let beta = CycReal::generator(&c5);
        let two = CycReal::from_int(&c5, 2);
        let other = beta.mul(&beta).sub(&two);
        let expr = beta.mul(&other).sub(&CycReal::one(&c5));
        assert!(expr.is_zero());
    }

    #[test]
    fn generator_roots_all_small_labels() {
        // for each m in 2..=12, 2cos(pi/m) is a root of its own context minpoly
        for m in 2..=12u64 {
            let c = make_context(m).unwrap();
            let beta = CycReal::generator(&c);
            let mut acc = CycReal::zero(&c);
            for coef in c.minimal_polynomial().iter().rev() {
                acc = acc.mul(&beta).add(&CycReal::from_rational(&c, coef.clone()));
            }
            assert!(acc.is_zero(), "minpoly(beta) != 0 for m={m}");
        }
        // cross-context: values for divisors of 12 vanish on their own minpolys
        let c12 = make_context(12).unwrap();
        for m in [2u64, 3, 4, 6, 12] {
            let ctx_m = make_context(m).unwrap();
            let val = cos_pi_over(&c12, m).unwrap().mul_rat(&rat(2));
            let mut acc = CycReal::zero(&c12);
            for coef in ctx_m.minimal_polynomial().iter().rev() {
                acc = acc
                    .mul(&val)
                    .add(&CycReal::from_rational(&c12, coef.clone()));
            }
            assert!(acc.is_zero(), "cross-context minpoly failed for m={m}");
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(
            l in proptest::sample::select(vec![3u64, 4, 5, 12]),
            xs in proptest::collection::vec((-6i64..7, 1i64..5), 8),
            ys in proptest::collection::vec((-6i64..7, 1i64..5), 8),
            zs in proptest::collection::vec((-6i64..7, 1i64..5), 8),
        ) {
            let c = make_context(l).unwrap();
            let elt = |cs: &[(i64, i64)]| {
                let coeffs: Vec<Rat> = cs
                    .iter()
                    .take(c.degree())
                    .map(|&(n, d)| rat(n) / rat(d))
                    .collect();
                CycReal::make(&c, coeffs)
            };
            let x = elt(&xs);
            let y = elt(&ys);
            let z = elt(&zs);
            // distributivity and associativity, exactly
            proptest::prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
            proptest::prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            if !x.is_zero() {
                let inv = x.inverse().unwrap();
                proptest::prop_assert_eq!(x.mul(&inv), CycReal::one(&c));
            }
            match x.sign() {
                Sign::Positive => proptest::prop_assert_eq!(x.neg().sign(), Sign::Negative),
                Sign::Negative => proptest::prop_assert_eq!(x.neg().sign(), Sign::Positive),
                Sign::Zero => proptest::prop_assert!(x.is_zero()),
            }
        }
    }
}
