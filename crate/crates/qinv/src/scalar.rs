//! Exact elements of cyclotomic fields ℚ(ζ_N).
//!
//! A value lives in the power basis 1, ζ, …, ζ^{d-1} of ℚ(ζ_N), d = φ(N), and is
//! always reduced modulo the N-th cyclotomic polynomial. Coefficients are stored as
//! integer numerators over a single positive common denominator with
//! gcd(numerators, denominator) = 1, so equality is a plain comparison. Values whose
//! numerators fit in `i64` use a fixed-width fast path (intermediate products in
//! `i128` with overflow checks); anything larger transparently moves to big integers.
//!
//! Every value whose only nonzero coefficient is the constant term is stored in the
//! order-1 field, so rationals mix freely with any cyclotomic order.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// Errors raised by scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("order {0} is not a positive integer")]
    BadOrder(i64),
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

/// Static data for ℚ(ζ_N): the degree and the reductions of ζ^k for k < N.
#[derive(Debug)]
pub struct Field {
    order: u32,
    degree: usize,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl Field {
    fn build(order: u32) -> Field {
        let phi = cyclotomic_poly(order, &mut HashMap::new());
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Φ_N
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * phi[i];
                }
            }
        }
        Field {
            order,
            degree,
            phi,
            powers,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_N, constant term first.
    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.phi
    }
}

fn cyclotomic_poly(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_poly(d, memo);
            p = poly_div_monic(&p, &q);
        }
    }
    memo.insert(n, p.clone());
    p
}

fn poly_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quo = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quo
}

static FIELDS: OnceLock<RwLock<HashMap<u32, &'static Field>>> = OnceLock::new();

/// Returns the (process-wide, immutable) data for ℚ(ζ_order).
pub fn field(order: u32) -> &'static Field {
    assert!(order >= 1, "cyclotomic order must be positive");
    let map = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = map.read().expect("field registry poisoned").get(&order) {
        return f;
    }
    let built = Field::build(order);
    let mut w = map.write().expect("field registry poisoned");
    w.entry(order).or_insert_with(|| Box::leak(Box::new(built)))
}

fn rational_field() -> &'static Field {
    static F: OnceLock<&'static Field> = OnceLock::new();
    F.get_or_init(|| field(1))
}

type SmallNum = SmallVec<[i64; 8]>;
type WideNum = SmallVec<[i128; 16]>;

#[derive(Clone)]
enum Repr {
    Small(SmallNum, i64),
    Big(Vec<BigInt>, BigInt),
}

/// An exact element of ℚ(ζ_N).
#[derive(Clone)]
pub struct Cyclo {
    f: &'static Field,
    r: Repr,
}

// ---------------------------------------------------------------------------
// normalization

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

fn finish_wide(f: &'static Field, mut num: WideNum, mut den: i128) -> Cyclo {
    while num.last() == Some(&0) {
        num.pop();
    }
    if num.is_empty() {
        return Cyclo::zero();
    }
    if den < 0 {
        den = -den;
        for c in num.iter_mut() {
            *c = -*c;
        }
    }
    let mut g = den;
    for &c in num.iter() {
        if g == 1 {
            break;
        }
        g = gcd_i128(g, c);
    }
    if g > 1 {
        den /= g;
        for c in num.iter_mut() {
            *c /= g;
        }
    }
    let f = if num.len() == 1 { rational_field() } else { f };
    let fits = den <= i64::MAX as i128
        && num
            .iter()
            .all(|&c| c >= i64::MIN as i128 && c <= i64::MAX as i128);
    if fits {
        Cyclo {
            f,
            r: Repr::Small(num.iter().map(|&c| c as i64).collect(), den as i64),
        }
    } else {
        Cyclo {
            f,
            r: Repr::Big(
                num.iter().map(|&c| BigInt::from(c)).collect(),
                BigInt::from(den),
            ),
        }
    }
}

fn finish_big(f: &'static Field, mut num: Vec<BigInt>, mut den: BigInt) -> Cyclo {
    while num.last().is_some_and(|c| c.is_zero()) {
        num.pop();
    }
    if num.is_empty() {
        return Cyclo::zero();
    }
    if den.is_negative() {
        den = -den;
        for c in num.iter_mut() {
            *c = -&*c;
        }
    }
    let mut g = den.clone();
    for c in num.iter() {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    if !g.is_one() {
        den = &den / &g;
        for c in num.iter_mut() {
            *c = &*c / &g;
        }
    }
    let f = if num.len() == 1 { rational_field() } else { f };
    let small_den = den.to_i64();
    let small_num: Option<SmallNum> = num.iter().map(|c| c.to_i64()).collect();
    match (small_num, small_den) {
        (Some(n), Some(d)) => Cyclo {
            f,
            r: Repr::Small(n, d),
        },
        _ => Cyclo {
            f,
            r: Repr::Big(num, den),
        },
    }
}

fn to_big(r: &Repr) -> (Vec<BigInt>, BigInt) {
    match r {
        Repr::Small(n, d) => (
            n.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::from(*d),
        ),
        Repr::Big(n, d) => (n.clone(), d.clone()),
    }
}

// ---------------------------------------------------------------------------
// kernels (both operands already in the same field `f`)

fn add_small(f: &'static Field, a: &[i64], ad: i64, b: &[i64], bd: i64) -> Option<Cyclo> {
    let g = gcd_i128(ad as i128, bd as i128);
    let fa = bd as i128 / g;
    let fb = ad as i128 / g;
    let den = (ad as i128).checked_mul(fa)?;
    let n = a.len().max(b.len());
    let mut out: WideNum = SmallVec::with_capacity(n);
    for k in 0..n {
        let x = if k < a.len() {
            (a[k] as i128).checked_mul(fa)?
        } else {
            0
        };
        let y = if k < b.len() {
            (b[k] as i128).checked_mul(fb)?
        } else {
            0
        };
        out.push(x.checked_add(y)?);
    }
    Some(finish_wide(f, out, den))
}

fn add_big(f: &'static Field, a: &Repr, b: &Repr) -> Cyclo {
    let (an, ad) = to_big(a);
    let (bn, bd) = to_big(b);
    let g = ad.gcd(&bd);
    let fa = &bd / &g;
    let fb = &ad / &g;
    let den = &ad * &fa;
    let n = an.len().max(bn.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = BigInt::zero();
        if k < an.len() {
            acc += &an[k] * &fa;
        }
        if k < bn.len() {
            acc += &bn[k] * &fb;
        }
        out.push(acc);
    }
    finish_big(f, out, den)
}

fn mul_small(f: &'static Field, a: &[i64], ad: i64, b: &[i64], bd: i64) -> Option<Cyclo> {
    let deg = f.degree;
    let n = f.order as usize;
    let mut conv: WideNum = SmallVec::from_elem(0, a.len() + b.len() - 1);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            conv[i + j] = conv[i + j].checked_add(x as i128 * y as i128)?;
        }
    }
    let mut out: WideNum = SmallVec::from_elem(0, deg);
    for (k, &c) in conv.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if k < deg {
            out[k] = out[k].checked_add(c)?;
        } else {
            let row = &f.powers[k % n];
            for t in 0..deg {
                if row[t] != 0 {
                    out[t] = out[t].checked_add(c.checked_mul(row[t] as i128)?)?;
                }
            }
        }
    }
    Some(finish_wide(f, out, ad as i128 * bd as i128))
}

fn mul_big(f: &'static Field, a: &Repr, b: &Repr) -> Cyclo {
    let (an, ad) = to_big(a);
    let (bn, bd) = to_big(b);
    let deg = f.degree;
    let n = f.order as usize;
    let mut conv = vec![BigInt::zero(); an.len() + bn.len() - 1];
    for (i, x) in an.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in bn.iter().enumerate() {
            conv[i + j] += x * y;
        }
    }
    let mut out = vec![BigInt::zero(); deg];
    for (k, c) in conv.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k < deg {
            out[k] += c;
        } else {
            let row = &f.powers[k % n];
            for t in 0..deg {
                if row[t] != 0 {
                    out[t] += c * row[t];
                }
            }
        }
    }
    finish_big(f, out, ad * bd)
}

fn scale_small(f: &'static Field, a: &[i64], ad: i64, rn: i64, rd: i64) -> Cyclo {
    let mut out: WideNum = SmallVec::with_capacity(a.len());
    for &x in a {
        out.push(x as i128 * rn as i128);
    }
    finish_wide(f, out, ad as i128 * rd as i128)
}

fn scale_big(f: &'static Field, a: &Repr, r: &Repr) -> Cyclo {
    let (an, ad) = to_big(a);
    let (rn, rd) = to_big(r);
    let rn = &rn[0];
    finish_big(f, an.iter().map(|x| x * rn).collect(), ad * rd)
}

// ---------------------------------------------------------------------------

impl Cyclo {
    pub fn zero() -> Cyclo {
        Cyclo {
            f: rational_field(),
            r: Repr::Small(SmallVec::new(), 1),
        }
    }

    pub fn one() -> Cyclo {
        Cyclo::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Cyclo {
        Cyclo::ratio(n, 1)
    }

    /// The rational number `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Cyclo {
        assert!(den != 0, "zero denominator");
        let mut v: WideNum = SmallVec::new();
        v.push(num as i128);
        finish_wide(rational_field(), v, den as i128)
    }

    pub fn from_bigint(n: BigInt) -> Cyclo {
        finish_big(rational_field(), vec![n], BigInt::one())
    }

    pub fn from_bigrational(q: &BigRational) -> Cyclo {
        finish_big(rational_field(), vec![q.numer().clone()], q.denom().clone())
    }

    /// Builds Σ c_k ζ_N^k from rational coefficients; any length is accepted and
    /// reduced modulo Φ_N.
    pub fn from_coeffs(order: u32, coeffs: &[BigRational]) -> Cyclo {
        let f = field(order);
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut out = vec![BigInt::zero(); f.degree];
        let n = order as usize;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            let row = &f.powers[k % n];
            for t in 0..f.degree {
                if row[t] != 0 {
                    out[t] += &scaled * row[t];
                }
            }
        }
        finish_big(f, out, den)
    }

    /// The primitive root ζ_N = exp(2πi/N).
    pub fn root_of_unity(order: u32) -> Cyclo {
        Cyclo::zeta_pow(order, 1)
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Cyclo {
        let f = field(order);
        let idx = k.rem_euclid(order as i64) as usize;
        let v: WideNum = f.powers[idx].iter().map(|&c| c as i128).collect();
        finish_wide(f, v, 1)
    }

    pub fn order(&self) -> u32 {
        self.f.order
    }

    pub fn is_zero(&self) -> bool {
        match &self.r {
            Repr::Small(n, _) => n.is_empty(),
            Repr::Big(n, _) => n.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.r, Repr::Small(n, 1) if n.len() == 1 && n[0] == 1)
    }

    pub fn is_rational(&self) -> bool {
        self.f.order == 1
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.is_rational() {
            return None;
        }
        let (n, d) = to_big(&self.r);
        Some(BigRational::new(
            n.into_iter().next().unwrap_or_else(BigInt::zero),
            d,
        ))
    }

    /// Coefficients in the power basis of ℚ(ζ_order()), length φ(order()).
    pub fn coeffs(&self) -> Vec<BigRational> {
        let (n, d) = to_big(&self.r);
        (0..self.f.degree)
            .map(|k| BigRational::new(n.get(k).cloned().unwrap_or_else(BigInt::zero), d.clone()))
            .collect()
    }

    /// Coefficients in the power basis of ℚ(ζ_m); `m` must be a multiple of the order.
    pub fn coeffs_in(&self, m: u32) -> Vec<BigRational> {
        let mut c = self.embed(m).coeffs();
        c.resize(field(m).degree, BigRational::zero());
        c
    }

    /// Re-expresses the value in ℚ(ζ_m); `m` must be a multiple of the current order.
    pub fn embed(&self, m: u32) -> Cyclo {
        assert!(
            m.is_multiple_of(self.f.order),
            "cannot embed order {} into order {}",
            self.f.order,
            m
        );
        if self.is_rational() || m == self.f.order {
            let mut out = self.clone();
            if !self.is_rational() {
                out.f = field(m);
            }
            return out;
        }
        let g = field(m);
        let step = (m / self.f.order) as usize;
        let n = m as usize;
        match &self.r {
            Repr::Small(a, d) => {
                let mut out: WideNum = SmallVec::from_elem(0, g.degree);
                let mut ok = true;
                'outer: for (k, &c) in a.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let row = &g.powers[(k * step) % n];
                    for t in 0..g.degree {
                        match (c as i128)
                            .checked_mul(row[t] as i128)
                            .and_then(|p| out[t].checked_add(p))
                        {
                            Some(v) => out[t] = v,
                            None => {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
                if ok {
                    return finish_wide(g, out, *d as i128);
                }
                self.embed_big(g, step)
            }
            Repr::Big(..) => self.embed_big(g, step),
        }
    }

    fn embed_big(&self, g: &'static Field, step: usize) -> Cyclo {
        let (a, d) = to_big(&self.r);
        let n = g.order as usize;
        let mut out = vec![BigInt::zero(); g.degree];
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &g.powers[(k * step) % n];
            for t in 0..g.degree {
                if row[t] != 0 {
                    out[t] += c * row[t];
                }
            }
        }
        finish_big(g, out, d)
    }

    /// Brings two values into a common field (the one of lcm order).
    fn unify<'a>(
        a: &'a Cyclo,
        b: &'a Cyclo,
    ) -> (std::borrow::Cow<'a, Cyclo>, std::borrow::Cow<'a, Cyclo>) {
        use std::borrow::Cow;
        if std::ptr::eq(a.f, b.f) {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        if a.is_rational() {
            let mut x = a.clone();
            x.f = b.f;
            return (Cow::Owned(x), Cow::Borrowed(b));
        }
        if b.is_rational() {
            let mut y = b.clone();
            y.f = a.f;
            return (Cow::Borrowed(a), Cow::Owned(y));
        }
        let l = (a.f.order as u64).lcm(&(b.f.order as u64));
        let l = u32::try_from(l).expect("cyclotomic order overflow");
        (Cow::Owned(a.embed(l)), Cow::Owned(b.embed(l)))
    }

    pub fn add_ref(&self, o: &Cyclo) -> Cyclo {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b) = Cyclo::unify(self, o);
        if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&a.r, &b.r) {
            if let Some(c) = add_small(a.f, an, *ad, bn, *bd) {
                return c;
            }
        }
        add_big(a.f, &a.r, &b.r)
    }

    pub fn mul_ref(&self, o: &Cyclo) -> Cyclo {
        if self.is_zero() || o.is_zero() {
            return Cyclo::zero();
        }
        if o.is_rational() {
            return self.scale_by(o);
        }
        if self.is_rational() {
            return o.scale_by(self);
        }
        let (a, b) = Cyclo::unify(self, o);
        if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&a.r, &b.r) {
            if let Some(c) = mul_small(a.f, an, *ad, bn, *bd) {
                return c;
            }
        }
        mul_big(a.f, &a.r, &b.r)
    }

    fn scale_by(&self, r: &Cyclo) -> Cyclo {
        if r.is_one() {
            return self.clone();
        }
        match (&self.r, &r.r) {
            (Repr::Small(a, ad), Repr::Small(rn, rd)) => scale_small(self.f, a, *ad, rn[0], *rd),
            _ => scale_big(self.f, &self.r, &r.r),
        }
    }

    pub fn neg_ref(&self) -> Cyclo {
        match &self.r {
            Repr::Small(n, d) => {
                if n.iter().all(|&c| c != i64::MIN) {
                    return Cyclo {
                        f: self.f,
                        r: Repr::Small(n.iter().map(|&c| -c).collect(), *d),
                    };
                }
                let (bn, bd) = to_big(&self.r);
                finish_big(self.f, bn.into_iter().map(|c| -c).collect(), bd)
            }
            Repr::Big(n, d) => Cyclo {
                f: self.f,
                r: Repr::Big(n.iter().map(|c| -c).collect(), d.clone()),
            },
        }
    }

    pub fn sub_ref(&self, o: &Cyclo) -> Cyclo {
        self.add_ref(&o.neg_ref())
    }

    /// Multiplicative inverse; fails exactly on zero.
    pub fn inv(&self) -> Result<Cyclo, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_rational() {
            let (n, d) = to_big(&self.r);
            return Ok(finish_big(self.f, vec![d], n[0].clone()));
        }
        // Solve (multiplication-by-self matrix) · y = e_0 over ℚ.
        let deg = self.f.degree;
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(deg);
        for j in 0..deg {
            let z = Cyclo::zeta_pow(self.f.order, j as i64);
            cols.push(self.mul_ref(&z).coeffs_in(self.f.order));
        }
        let mut m: Vec<Vec<BigRational>> = (0..deg)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..deg).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for c in 0..deg {
            let p = (c..deg)
                .find(|&r| !m[r][c].is_zero())
                .ok_or(ScalarError::DivisionByZero)?;
            m.swap(c, p);
            let pinv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x = &*x * &pinv;
            }
            for r in 0..deg {
                if r != c && !m[r][c].is_zero() {
                    let fct = m[r][c].clone();
                    for k in c..=deg {
                        let t = &m[c][k] * &fct;
                        m[r][k] -= t;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = m.into_iter().map(|row| row[deg].clone()).collect();
        Ok(Cyclo::from_coeffs(self.f.order, &sol))
    }

    pub fn div_ref(&self, o: &Cyclo) -> Result<Cyclo, ScalarError> {
        Ok(self.mul_ref(&o.inv()?))
    }

    /// Integer power; negative exponents invert (and fail on zero).
    pub fn pow(&self, e: i64) -> Result<Cyclo, ScalarError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Cyclo::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Cyclo {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.f.order as i64;
        let (a, d) = to_big(&self.r);
        let mut out = vec![BigInt::zero(); self.f.degree];
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.f.powers[((n - k as i64).rem_euclid(n)) as usize];
            for t in 0..self.f.degree {
                if row[t] != 0 {
                    out[t] += c * row[t];
                }
            }
        }
        finish_big(self.f, out, d)
    }

    /// Floating-point value (real, imaginary) under ζ_N ↦ exp(2πi/N). Display only.
    pub fn approx(&self) -> (f64, f64) {
        let (a, d) = to_big(&self.r);
        let df = big_to_f64(&d);
        let n = self.f.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in a.iter().enumerate() {
            let x = big_to_f64(c) / df;
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += x * ang.cos();
            im += x * ang.sin();
        }
        (re, im)
    }

    /// Number of stored numerator limbs; used by tests to confirm the big-integer path.
    pub fn is_big(&self) -> bool {
        matches!(self.r, Repr::Big(..))
    }
}

fn big_to_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or(f64::NAN)
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Cyclo::from_i64(n)
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Cyclo) -> bool {
        if std::ptr::eq(self.f, o.f) {
            return match (&self.r, &o.r) {
                (Repr::Small(a, ad), Repr::Small(b, bd)) => ad == bd && a == b,
                (Repr::Big(a, ad), Repr::Big(b, bd)) => ad == bd && a == b,
                _ => false,
            };
        }
        if self.is_rational() || o.is_rational() {
            return false;
        }
        let (a, b) = Cyclo::unify(self, o);
        *a == *b
    }
}

impl Eq for Cyclo {}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $m(self, o: &Cyclo) -> Cyclo {
                self.$f(o)
            }
        }
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: Cyclo) -> Cyclo {
                self.$f(&o)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: &Cyclo) -> Cyclo {
                self.$f(o)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.neg_ref()
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.neg_ref()
    }
}

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, o: &Cyclo) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, o: &Cyclo) {
        *self = self.sub_ref(o);
    }
}

impl MulAssign<&Cyclo> for Cyclo {
    fn mul_assign(&mut self, o: &Cyclo) {
        *self = self.mul_ref(o);
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let coeffs = self.coeffs();
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(fm, "-")?;
                }
            } else {
                write!(fm, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 {
                write!(fm, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(fm, "{}*", abs)?;
                }
                if k == 1 {
                    write!(fm, "z{}", self.f.order)?;
                } else {
                    write!(fm, "z{}^{}", self.f.order, k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, fm)
    }
}

// ---------------------------------------------------------------------------
// serialization: {"order": N, "coeffs": [["num","den"], ...]}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    order: u32,
    coeffs: Vec<(String, String)>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs()
            .iter()
            .map(|c| (c.numer().to_string(), c.denom().to_string()))
            .collect();
        ScalarJson {
            order: self.f.order,
            coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ScalarJson::deserialize(d)?;
        Cyclo::from_json_parts(j.order, &j.coeffs).map_err(D::Error::custom)
    }
}

impl Cyclo {
    fn from_json_parts(order: u32, coeffs: &[(String, String)]) -> Result<Cyclo, ScalarError> {
        if order == 0 {
            return Err(ScalarError::BadOrder(0));
        }
        let mut qs = Vec::with_capacity(coeffs.len());
        for (n, d) in coeffs {
            let n: BigInt = n
                .parse()
                .map_err(|_| ScalarError::Malformed(format!("numerator {n:?}")))?;
            let d: BigInt = d
                .parse()
                .map_err(|_| ScalarError::Malformed(format!("denominator {d:?}")))?;
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            qs.push(BigRational::new(n, d));
        }
        Ok(Cyclo::from_coeffs(order, &qs))
    }

    /// Canonical JSON value of the scalar.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("scalar serialization cannot fail")
    }
}

// ---------------------------------------------------------------------------
// square roots of rationals

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// The positive real square root of a prime, as an element of a cyclotomic field.
fn sqrt_prime(p: u64) -> Cyclo {
    if p == 2 {
        return Cyclo::zeta_pow(8, 1) - Cyclo::zeta_pow(8, 3);
    }
    let pp = u32::try_from(p).expect("prime too large for a cyclotomic square root");
    let mut g = Cyclo::zero();
    for a in 1..p {
        let leg = pow_mod(a, (p - 1) / 2, p);
        let term = Cyclo::zeta_pow(pp, a as i64);
        if leg == 1 {
            g += &term;
        } else {
            g -= &term;
        }
    }
    if p % 4 == 1 {
        g
    } else {
        -(Cyclo::zeta_pow(4, 1) * g)
    }
}

/// Principal square root of a rational: the positive root for r > 0, i·√|r| for r < 0.
/// Returns `None` when the numerator or denominator is too large to factor.
pub fn sqrt_rational(r: &BigRational) -> Option<Cyclo> {
    if r.is_zero() {
        return Some(Cyclo::zero());
    }
    let neg = r.is_negative();
    let a = r.numer().abs().to_u64()?;
    let b = r.denom().to_u64()?;
    let prod = a.checked_mul(b)?;
    let mut out = Cyclo::ratio(1, i64::try_from(b).ok()?);
    let mut square_part: i64 = 1;
    for (p, e) in factor_u64(prod) {
        square_part = square_part.checked_mul(i64::try_from(p).ok()?.checked_pow(e / 2)?)?;
        if e % 2 == 1 {
            out = out * sqrt_prime(p);
        }
    }
    out = out * Cyclo::from_i64(square_part);
    if neg {
        out = out * Cyclo::zeta_pow(4, 1);
    }
    debug_assert!(out.mul_ref(&out) == Cyclo::from_bigrational(r));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Cyclo {
        Cyclo::ratio(n, d)
    }

    #[test]
    fn first_root_is_one() {
        assert!(Cyclo::root_of_unity(1).is_one());
    }

    #[test]
    fn zeta3_minimal_polynomial() {
        let z = Cyclo::root_of_unity(3);
        let s = Cyclo::one() + z.clone() + z.clone() * z;
        assert!(s.is_zero());
    }

    #[test]
    fn zeta5_times_its_fourth_power() {
        let z = Cyclo::root_of_unity(5);
        assert!((z.clone() * z.pow(4).unwrap()).is_one());
        assert!(z.pow(5).unwrap().is_one());
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn i_squared() {
        let i = Cyclo::root_of_unity(4);
        assert_eq!(i.clone() * i, q(-1, 1));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Cyclo::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn inverse_of_one_minus_zeta() {
        let z = Cyclo::root_of_unity(7);
        let x = Cyclo::one() - z;
        let y = x.inv().unwrap();
        assert!((x * y).is_one());
    }

    #[test]
    fn mixed_orders_meet_in_lcm() {
        let a = Cyclo::root_of_unity(4);
        let b = Cyclo::root_of_unity(3);
        let c = a.clone() * b.clone();
        assert_eq!(c.order(), 12);
        assert_eq!(c, Cyclo::zeta_pow(12, 7));
        assert_eq!(b, Cyclo::zeta_pow(6, 2));
    }

    #[test]
    fn equality_across_orders() {
        let z = Cyclo::root_of_unity(5);
        assert_eq!(z.embed(10), z);
        assert_eq!(z.embed(20).order(), 20);
    }

    #[test]
    fn overflow_moves_to_big_and_back() {
        let big = Cyclo::from_i64(i64::MAX) * Cyclo::root_of_unity(5);
        let sq = big.clone() * big.clone();
        assert!(sq.is_big());
        let back = sq.div_ref(&big).unwrap();
        assert_eq!(back, big);
        assert!(!back.is_big());
    }

    #[test]
    fn square_roots_of_small_rationals() {
        for n in [2i64, 3, 5, 6, 10, 12, -1, -3, -10] {
            let r = BigRational::from_integer(BigInt::from(n));
            let s = sqrt_rational(&r).unwrap();
            assert_eq!(s.clone() * s.clone(), Cyclo::from_i64(n));
            let (re, im) = s.approx();
            if n > 0 {
                assert!(re > 0.0 && im.abs() < 1e-9, "{n}: {re} {im}");
            } else {
                assert!(im > 0.0 && re.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn serialization_round_trip() {
        let x = q(3, 7) - Cyclo::zeta_pow(5, 2) * q(-2, 9);
        let j = serde_json::to_string(&x).unwrap();
        assert!(j.contains("\"order\":5"));
        let y: Cyclo = serde_json::from_str(&j).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn display_is_readable() {
        let x = q(1, 2) - Cyclo::zeta_pow(5, 2) * q(3, 1);
        assert_eq!(x.to_string(), "1/2 - 3*z5^2");
    }

    #[test]
    fn conjugate_inverts_roots() {
        let z = Cyclo::root_of_unity(9);
        assert_eq!(z.conj(), z.inv().unwrap());
    }
}
