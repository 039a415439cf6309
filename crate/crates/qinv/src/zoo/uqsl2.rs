//! The small quantum group u_q(sl₂) at a primitive p-th root of unity q = ζ_p, p an
//! odd prime, on the PBW basis E^a F^b K^c (0 ≤ a, b, c < p).
//!
//! Relations: KE = q²EK, KF = q⁻²FK, EF − FE = (K − K⁻¹)/(q − q⁻¹), E^p = F^p = 0,
//! K^p = 1. Coproduct Δ(E) = 1⊗E + E⊗K, Δ(F) = K⁻¹⊗F + F⊗1, Δ(K) = K⊗K;
//! antipode S(E) = −EK⁻¹, S(F) = −KF, S(K) = K⁻¹. The R-matrix is
//! R = (1/p) Σ_{i,j} q^{-2ij} K^i⊗K^j · Σ_n (q−q⁻¹)^n / [n]! · q^{n(n−1)/2} E^n⊗F^n,
//! and the balancing element is G = K.

use super::ZooError;
use crate::hopf::{certify_hopf, Elem, HopfAlgebra, HopfData, TensorElement};
use crate::scalar::Cyclo;

/// PBW index of E^a F^b K^c.
pub fn pbw(p: usize, a: usize, b: usize, c: usize) -> usize {
    (a * p + b) * p + c
}

fn unpbw(p: usize, i: usize) -> (usize, usize, usize) {
    (i / (p * p), (i / p) % p, i % p)
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3
        && p % 2 == 1
        && (3..)
            .step_by(2)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Quantum integer [n] = (q^n − q^{−n})/(q − q^{−1}).
pub fn qint(p: u32, n: i64) -> Cyclo {
    let num = Cyclo::zeta_pow(p, n) - Cyclo::zeta_pow(p, -n);
    let den = Cyclo::zeta_pow(p, 1) - Cyclo::zeta_pow(p, -1);
    num.div_ref(&den).expect("q − q⁻¹ ≠ 0")
}

pub fn qfactorial(p: u32, n: i64) -> Cyclo {
    (1..=n).fold(Cyclo::one(), |acc, k| acc * qint(p, k))
}

struct Builder {
    p: usize,
    q: Vec<Cyclo>,
}

impl Builder {
    fn qp(&self, k: i64) -> Cyclo {
        self.q[k.rem_euclid(self.p as i64) as usize].clone()
    }

    fn left_e(&self, i: usize) -> Elem {
        let (a, b, c) = unpbw(self.p, i);
        if a + 1 < self.p {
            Elem::basis(pbw(self.p, a + 1, b, c))
        } else {
            Elem::zero()
        }
    }

    fn left_k(&self, i: usize, power: i64) -> Elem {
        let (a, b, c) = unpbw(self.p, i);
        let c2 = (c as i64 + power).rem_euclid(self.p as i64) as usize;
        Elem::monomial(
            pbw(self.p, a, b, c2),
            self.qp(power * (2 * a as i64 - 2 * b as i64)),
        )
    }

    fn apply(&self, f: impl Fn(usize) -> Elem, x: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (i, c) in x.terms() {
            out = out.add(&f(*i).scale(c));
        }
        out
    }

    /// Left multiplication by F on every basis element, by recursion on the E-degree:
    /// F·E·w = E·(F·w) − (K·w − K⁻¹·w)/(q − q⁻¹).
    fn left_f_table(&self) -> Vec<Elem> {
        let p = self.p;
        let n = p * p * p;
        let mut table = vec![Elem::zero(); n];
        let inv_qq = (self.qp(1) - self.qp(-1)).inv().expect("q − q⁻¹ ≠ 0");
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let i = pbw(p, a, b, c);
                    table[i] = if a == 0 {
                        if b + 1 < p {
                            Elem::basis(pbw(p, 0, b + 1, c))
                        } else {
                            Elem::zero()
                        }
                    } else {
                        let w = pbw(p, a - 1, b, c);
                        let efw = self.apply(|j| self.left_e(j), &table[w]);
                        let kw = self.left_k(w, 1).sub(&self.left_k(w, -1)).scale(&inv_qq);
                        efw.sub(&kw)
                    };
                }
            }
        }
        table
    }
}

/// Which of the standard R-matrix arrangements to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RConvention {
    /// Sign s in the Cartan factor q^{2s·ij}.
    pub cartan_sign: i64,
    /// Whether the Cartan factor multiplies the nilpotent factor on the left.
    pub cartan_first: bool,
}

pub const STANDARD_R: RConvention = RConvention {
    cartan_sign: -1,
    cartan_first: true,
};

pub fn uq_sl2(p: usize) -> Result<HopfAlgebra, ZooError> {
    uq_sl2_with(p, STANDARD_R)
}

/// Builds u_q(sl₂) with the given R-matrix arrangement, without certifying it.
pub fn uq_sl2_with(p: usize, conv: RConvention) -> Result<HopfAlgebra, ZooError> {
    if !is_odd_prime(p) {
        return Err(ZooError::Unsupported(format!(
            "uq_sl2 needs an odd prime, got {p}"
        )));
    }
    let pu = p as u32;
    let bld = Builder {
        p,
        q: (0..p).map(|k| Cyclo::zeta_pow(pu, k as i64)).collect(),
    };
    let n = p * p * p;
    let lf = bld.left_f_table();

    // Multiplication: (E^a F^b K^c)·y = E^a(F^b(K^c y)).
    let mut mul = vec![Elem::zero(); n * n];
    for j in 0..n {
        let mut kc = Elem::basis(j);
        for c in 0..p {
            let mut fb = kc.clone();
            for b in 0..p {
                let mut ea = fb.clone();
                for a in 0..p {
                    mul[pbw(p, a, b, c) * n + j] = ea.clone();
                    ea = bld.apply(|i| bld.left_e(i), &ea);
                }
                fb = bld.apply(|i| lf[i].clone(), &fb);
            }
            kc = bld.apply(|i| bld.left_k(i, 1), &kc);
        }
    }
    let labels: Vec<String> = (0..n)
        .map(|i| {
            let (a, b, c) = unpbw(p, i);
            format!("E^{a}F^{b}K^{c}")
        })
        .collect();
    let one = Elem::basis(pbw(p, 0, 0, 0));
    let e = Elem::basis(pbw(p, 1, 0, 0));
    let f = Elem::basis(pbw(p, 0, 1, 0));
    let k = Elem::basis(pbw(p, 0, 0, 1));
    let kinv = Elem::basis(pbw(p, 0, 0, p - 1));
    let counit: Vec<Cyclo> = (0..n)
        .map(|i| {
            if unpbw(p, i).0 == 0 && unpbw(p, i).1 == 0 {
                Cyclo::one()
            } else {
                Cyclo::zero()
            }
        })
        .collect();

    // A provisional algebra to multiply in while assembling Δ and S.
    let proto = HopfAlgebra::new(HopfData {
        name: format!("uq_sl2:{p}"),
        labels: labels.clone(),
        mul,
        unit: one.clone(),
        comul: vec![Vec::new(); n],
        counit: counit.clone(),
        antipode: vec![Elem::zero(); n],
        r_matrix: None,
        balancing: None,
        generators: Some(vec![e.clone(), f.clone(), k.clone()]),
    })
    .map_err(|err| ZooError::Construction(err.to_string()))?;

    let de = TensorElement::pure(&[&one, &e]).add(&TensorElement::pure(&[&e, &k]));
    let df = TensorElement::pure(&[&kinv, &f]).add(&TensorElement::pure(&[&f, &one]));
    let mut comul_t: Vec<TensorElement> = vec![TensorElement::zero(2); n];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let i = pbw(p, a, b, c);
                comul_t[i] = if a > 0 {
                    proto.tensor_mul(&de, &comul_t[pbw(p, a - 1, b, c)])
                } else if b > 0 {
                    proto.tensor_mul(&df, &comul_t[pbw(p, 0, b - 1, c)])
                } else {
                    let kc = Elem::basis(pbw(p, 0, 0, c));
                    TensorElement::pure(&[&kc, &kc])
                };
            }
        }
    }
    let comul: Vec<Vec<(usize, usize, Cyclo)>> = comul_t.iter().map(|t| t.to_triples()).collect();

    let se = proto.mul(&e, &kinv).neg();
    let sf = proto.mul(&k, &f).neg();
    let antipode: Vec<Elem> = (0..n)
        .map(|i| {
            let (a, b, c) = unpbw(p, i);
            let kmc = Elem::basis(pbw(p, 0, 0, (p - c) % p));
            let mut x = kmc;
            for _ in 0..b {
                x = proto.mul(&x, &sf);
            }
            for _ in 0..a {
                x = proto.mul(&x, &se);
            }
            x
        })
        .collect();

    // R-matrix.
    let q = |m: i64| bld.qp(m);
    let inv_p = Cyclo::ratio(1, p as i64);
    let mut cartan = TensorElement::zero(2);
    for i in 0..p {
        for j in 0..p {
            cartan.add_term(
                &[pbw(p, 0, 0, i), pbw(p, 0, 0, j)],
                &inv_p * &q(conv.cartan_sign * 2 * (i * j) as i64),
            );
        }
    }
    let qq = q(1) - q(-1);
    let mut nil = TensorElement::zero(2);
    for m in 0..p {
        let coef = qq
            .pow(m as i64)
            .expect("power")
            .div_ref(&qfactorial(pu, m as i64))
            .expect("[m]! ≠ 0 for m < p")
            * q((m * (m.saturating_sub(1)) / 2) as i64);
        nil.add_term(&[pbw(p, m, 0, 0), pbw(p, 0, m, 0)], coef);
    }
    let r = if conv.cartan_first {
        proto.tensor_mul(&cartan, &nil)
    } else {
        proto.tensor_mul(&nil, &cartan)
    };

    HopfAlgebra::new(HopfData {
        name: format!("uq_sl2:{p}"),
        labels,
        mul: (0..n * n)
            .map(|x| proto.mul_basis(x / n, x % n).clone())
            .collect(),
        unit: one,
        comul,
        counit,
        antipode,
        r_matrix: Some(r),
        balancing: Some(k.clone()),
        generators: Some(vec![e, f, k]),
    })
    .map_err(|err| ZooError::Construction(err.to_string()))
}

/// Builds and certifies u_q(sl₂); certification failure aborts with the violated identity.
pub fn uq_sl2_certified(p: usize) -> Result<HopfAlgebra, ZooError> {
    let h = uq_sl2(p)?;
    let rep = certify_hopf(&h);
    if let Some(f) = rep.failures().first() {
        return Err(ZooError::Construction(format!(
            "{} fails: {}",
            f.name,
            f.witness.clone().unwrap_or_default()
        )));
    }
    Ok(h)
}
