//! The Hennings–Kauffman–Radford invariant.
//!
//! `decorate` turns a split diagram into beads along each component: R-legs at
//! crossings, powers of G at extrema, twist elements, coupon legs. A bead met on
//! an upward strand is read through the antipode. Along a component the bead
//! product is Z = x_m⋯x_1 (later beads to the left). The element ∫I has
//! component c equal to G·Z_c, and τ_raw applies μ^R to every leg.
//!
//! With these conventions μ^R(G·xy) = μ^R(G·yx), so the value does not depend on
//! the basepoints. The plain trace of Z in a representation is the colored
//! invariant computed by matrix contraction in [`crate::rt`].

use std::collections::HashMap;

use serde::Serialize;

use crate::diagram::{Event, SplitDiagram};
use crate::hopf::{CentralElement, Elem, HopfAlgebra, IntegralSet, RibbonData, TensorElement};
use crate::scalar::Cyclo;
use crate::QinvError;

/// Where a bead's element comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BeadSource {
    /// Leg `leg` of junction `junction` (a crossing or a coupon), summed over its terms.
    Leg { junction: usize, leg: usize },
    /// G^power from an extremum.
    GPower(i64),
    /// θ^power from twist slices or framing numbers.
    Twist(i64),
    /// An inserted central element.
    Central(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bead {
    pub source: BeadSource,
    /// 1 when the bead sits on an upward strand, 0 otherwise.
    pub antipode_power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum JunctionKind {
    Crossing { id: usize, positive: bool },
    Coupon { id: usize, width: usize },
}

/// A summed tensor whose legs are placed on the diagram: Σ_t terms[t][0] ⊗ terms[t][1] ⊗ ⋯.
#[derive(Clone, Debug)]
pub struct Junction {
    pub kind: JunctionKind,
    pub terms: Vec<Vec<Elem>>,
    /// Component carrying each leg.
    pub leg_components: Vec<usize>,
}

/// Beads per component plus the junctions they refer to.
#[derive(Clone, Debug)]
pub struct BeadPlan {
    pub components: Vec<Vec<Bead>>,
    pub junctions: Vec<Junction>,
    /// Elements referenced by `BeadSource::Central`.
    pub centrals: Vec<Elem>,
    /// Factor from free-standing coupons.
    pub scalar: Cyclo,
}

/// The algebra data the decoration rules read from.
#[derive(Clone, Copy)]
pub struct Decorator<'a> {
    pub h: &'a HopfAlgebra,
    pub rd: &'a RibbonData,
    /// θ₊ and θ₋: the elements of a positive and a negative curl. Needed only for
    /// twist slices and framing numbers that differ from the blackboard framing.
    pub twists: Option<(&'a Elem, &'a Elem)>,
    /// The cointegral, needed only for coupons.
    pub lambda: Option<&'a Elem>,
}

impl Decorator<'_> {
    fn twist(&self, power: i64) -> Result<Elem, QinvError> {
        let (tp, tm) = self
            .twists
            .ok_or_else(|| QinvError::Engine("twist elements not available".into()))?;
        let base = if power >= 0 { tp } else { tm };
        Ok(self.h.pow(base, power.unsigned_abs() as u32))
    }

    fn g_power(&self, p: i64) -> Elem {
        let base = if p >= 0 {
            &self.rd.balancing
        } else {
            &self.rd.balancing_inv
        };
        self.h.pow(base, p.unsigned_abs() as u32)
    }
}

/// Builds the bead plan of a split diagram.
pub fn decorate(s: &SplitDiagram, dec: &Decorator) -> Result<BeadPlan, QinvError> {
    let d = &s.base;
    let h = dec.h;
    let mut junctions = Vec::new();
    for (id, c) in d.crossings().iter().enumerate() {
        let terms = if c.left_over {
            dec.rd
                .r_factors
                .iter()
                .map(|(e, f)| vec![e.clone(), f.clone()])
                .collect()
        } else {
            dec.rd
                .r_inv_factors
                .iter()
                .map(|(se, f)| vec![f.clone(), se.clone()])
                .collect()
        };
        junctions.push(Junction {
            kind: JunctionKind::Crossing {
                id,
                positive: c.positive,
            },
            terms,
            leg_components: vec![c.left_component, c.right_component],
        });
    }
    let mut scalar = Cyclo::one();
    let mut coupon_junction = vec![None; d.coupons().len()];
    for (id, &(slice, width)) in d.coupons().iter().enumerate() {
        let lambda = dec
            .lambda
            .ok_or_else(|| QinvError::Engine("coupons need the cointegral".into()))?;
        if width == 0 {
            scalar = &scalar * &h.counit(lambda);
            continue;
        }
        let terms: Vec<Vec<Elem>> = if width == 1 {
            vec![vec![lambda.clone()]]
        } else {
            h.comul_iter(lambda, width)
                .terms()
                .map(|(idx, c)| {
                    idx.iter()
                        .enumerate()
                        .map(|(k, &i)| {
                            if k == 0 {
                                Elem::monomial(i, c.clone())
                            } else {
                                Elem::basis(i)
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let pos = match d.slices()[slice] {
            crate::diagram::Slice::Coupon { pos, .. } => pos,
            _ => unreachable!("registered coupon"),
        };
        let leg_components = (0..width)
            .map(|k| {
                d.component_of(crate::diagram::Segment {
                    level: slice + 1,
                    pos: pos + k,
                })
            })
            .collect();
        coupon_junction[id] = Some(junctions.len());
        junctions.push(Junction {
            kind: JunctionKind::Coupon { id, width },
            terms,
            leg_components,
        });
    }

    let defects = d.framing_defects();
    let mut components = Vec::with_capacity(s.traversals.len());
    for (c, steps) in s.traversals.iter().enumerate() {
        let mut beads = Vec::new();
        if defects[c] != 0 {
            dec.twist(defects[c])?;
            beads.push(Bead {
                source: BeadSource::Twist(defects[c]),
                antipode_power: 0,
            });
        }
        for st in steps {
            let ap = u32::from(st.up);
            match st.event {
                Event::Plain => {}
                Event::Crossing { id, leg } => beads.push(Bead {
                    source: BeadSource::Leg { junction: id, leg },
                    antipode_power: ap,
                }),
                Event::Coupon { id, leg } => {
                    let j = coupon_junction[id].expect("coupon with legs");
                    beads.push(Bead {
                        source: BeadSource::Leg { junction: j, leg },
                        antipode_power: ap,
                    })
                }
                Event::Twist { positive } => {
                    let p = if positive { 1 } else { -1 };
                    dec.twist(p)?;
                    beads.push(Bead {
                        source: BeadSource::Twist(p),
                        antipode_power: 0,
                    })
                }
                Event::Extremum { g_power } => {
                    if g_power != 0 {
                        beads.push(Bead {
                            source: BeadSource::GPower(g_power),
                            antipode_power: 0,
                        })
                    }
                }
            }
        }
        components.push(beads);
    }
    Ok(BeadPlan {
        components,
        junctions,
        centrals: Vec::new(),
        scalar,
    })
}

/// Adds the central element `c` at the basepoint of each targeted component
/// (all components when `targets` is `None`).
pub fn insert_central(
    plan: &BeadPlan,
    c: &CentralElement,
    targets: Option<&[usize]>,
) -> Result<BeadPlan, QinvError> {
    if !c.is_central || !c.is_antipode_invariant {
        return Err(QinvError::Engine(
            "inserted element must be central and S-invariant".into(),
        ));
    }
    let mut out = plan.clone();
    let k = out.centrals.len();
    out.centrals.push(c.value.clone());
    for (i, beads) in out.components.iter_mut().enumerate() {
        if targets.is_none_or(|t| t.contains(&i)) {
            beads.insert(
                0,
                Bead {
                    source: BeadSource::Central(k),
                    antipode_power: 0,
                },
            );
        }
    }
    Ok(out)
}

const OPEN: u32 = u32::MAX;

/// Resolved bead elements: junction legs per term (plain and through S), fixed beads.
struct Resolved<'a> {
    h: &'a HopfAlgebra,
    plan: &'a BeadPlan,
    legs: Vec<Vec<[Option<Elem>; 2]>>,
    dec: &'a Decorator<'a>,
}

impl<'a> Resolved<'a> {
    fn new(plan: &'a BeadPlan, dec: &'a Decorator<'a>) -> Resolved<'a> {
        let h = dec.h;
        let mut legs: Vec<Vec<[Option<Elem>; 2]>> = plan
            .junctions
            .iter()
            .map(|j| vec![[None, None]; j.terms.len() * j.leg_components.len()])
            .collect();
        for beads in &plan.components {
            for b in beads {
                if let BeadSource::Leg { junction, leg } = b.source {
                    let j = &plan.junctions[junction];
                    let nl = j.leg_components.len();
                    for (t, term) in j.terms.iter().enumerate() {
                        let slot = &mut legs[junction][t * nl + leg][b.antipode_power as usize];
                        if slot.is_none() {
                            *slot = Some(if b.antipode_power == 1 {
                                h.antipode(&term[leg])
                            } else {
                                term[leg].clone()
                            });
                        }
                    }
                }
            }
        }
        Resolved { h, plan, legs, dec }
    }

    fn leg(&self, junction: usize, term: usize, leg: usize, ap: u32) -> &Elem {
        let nl = self.plan.junctions[junction].leg_components.len();
        self.legs[junction][term * nl + leg][ap as usize]
            .as_ref()
            .expect("resolved")
    }

    fn fixed(&self, src: &BeadSource) -> Elem {
        match src {
            BeadSource::GPower(p) => self.dec.g_power(*p),
            BeadSource::Twist(p) => self.dec.twist(*p).expect("checked in decorate"),
            BeadSource::Central(k) => self.plan.centrals[*k].clone(),
            BeadSource::Leg { .. } => unreachable!("legs are summed"),
        }
    }
}

/// Bead product of component `c` as a function of the junctions it shares with
/// other components: keys hold one term index per junction (OPEN elsewhere).
fn component_products(r: &Resolved, c: usize) -> HashMap<Vec<u32>, Elem> {
    let plan = r.plan;
    let nj = plan.junctions.len();
    let mut remaining: Vec<usize> = plan
        .junctions
        .iter()
        .map(|j| j.leg_components.iter().filter(|&&k| k == c).count())
        .collect();
    let local: Vec<bool> = plan
        .junctions
        .iter()
        .map(|j| j.leg_components.iter().all(|&k| k == c))
        .collect();
    let mut states: HashMap<Vec<u32>, Elem> = HashMap::new();
    states.insert(vec![OPEN; nj], r.h.one());
    for b in &plan.components[c] {
        match b.source {
            BeadSource::Leg { junction, leg } => {
                let nterms = plan.junctions[junction].terms.len();
                let mut next: HashMap<Vec<u32>, Elem> = HashMap::with_capacity(states.len());
                for (key, p) in states {
                    let range: Vec<u32> = if key[junction] == OPEN {
                        (0..nterms as u32).collect()
                    } else {
                        vec![key[junction]]
                    };
                    for t in range {
                        let x = r.leg(junction, t as usize, leg, b.antipode_power);
                        let prod = r.h.mul(x, &p);
                        if prod.is_zero() {
                            continue;
                        }
                        let mut k2 = key.clone();
                        k2[junction] = t;
                        add_into(&mut next, k2, prod);
                    }
                }
                states = next;
                remaining[junction] -= 1;
                if remaining[junction] == 0 && local[junction] {
                    let mut summed: HashMap<Vec<u32>, Elem> = HashMap::with_capacity(states.len());
                    for (mut key, p) in states {
                        key[junction] = OPEN;
                        add_into(&mut summed, key, p);
                    }
                    states = summed;
                }
            }
            _ => {
                let x = r.fixed(&b.source);
                let x = if b.antipode_power == 1 {
                    r.h.antipode(&x)
                } else {
                    x
                };
                states = states
                    .into_iter()
                    .map(|(k, p)| (k, r.h.mul(&x, &p)))
                    .filter(|(_, p)| !p.is_zero())
                    .collect();
            }
        }
    }
    // ∫I carries G on the left of each component product.
    states
        .into_iter()
        .map(|(k, p)| (k, r.h.mul(&r.rd_g(), &p)))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

impl Resolved<'_> {
    fn rd_g(&self) -> Elem {
        self.dec.rd.balancing.clone()
    }
}

fn add_into(map: &mut HashMap<Vec<u32>, Elem>, key: Vec<u32>, x: Elem) {
    match map.get_mut(&key) {
        Some(e) => {
            let s = e.add(&x);
            if s.is_zero() {
                map.remove(&key);
            } else {
                *e = s;
            }
        }
        None => {
            map.insert(key, x);
        }
    }
}

/// Merges two keys if they agree on every junction assigned in both.
fn merge(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| match (x, y) {
            (OPEN, y) => Some(y),
            (x, OPEN) => Some(x),
            (x, y) if x == y => Some(x),
            _ => None,
        })
        .collect()
}

/// Sums out the junctions whose legs all lie on components `< upto`.
fn close_junctions<T: Clone>(
    plan: &BeadPlan,
    upto: usize,
    table: HashMap<Vec<u32>, T>,
    add: impl Fn(&T, &T) -> T,
) -> HashMap<Vec<u32>, T> {
    let done: Vec<bool> = plan
        .junctions
        .iter()
        .map(|j| j.leg_components.iter().all(|&k| k < upto))
        .collect();
    let mut out: HashMap<Vec<u32>, T> = HashMap::with_capacity(table.len());
    for (mut key, v) in table {
        for (i, d) in done.iter().enumerate() {
            if *d {
                key[i] = OPEN;
            }
        }
        match out.get_mut(&key) {
            Some(e) => *e = add(e, &v),
            None => {
                out.insert(key, v);
            }
        }
    }
    out
}

/// The element ∫I ∈ A^{⊗N} of a bead plan.
pub fn contract(plan: &BeadPlan, dec: &Decorator) -> TensorElement {
    let r = Resolved::new(plan, dec);
    let n = plan.components.len();
    let nj = plan.junctions.len();
    let mut table: HashMap<Vec<u32>, TensorElement> = HashMap::new();
    table.insert(vec![OPEN; nj], TensorElement::scalar(plan.scalar.clone()));
    for c in 0..n {
        let prods = component_products(&r, c);
        let mut next: HashMap<Vec<u32>, TensorElement> = HashMap::new();
        for (k1, t) in &table {
            for (k2, p) in &prods {
                if let Some(k) = merge(k1, k2) {
                    let term = t.tensor(&TensorElement::from_elem(p));
                    match next.get_mut(&k) {
                        Some(e) => e.add_assign(&term),
                        None => {
                            next.insert(k, term);
                        }
                    }
                }
            }
        }
        table = close_junctions(plan, c + 1, next, |a, b| a.add(b));
    }
    let mut out = TensorElement::zero(n);
    for t in table.values() {
        out.add_assign(t);
    }
    out
}

/// Applies one linear form per component without forming ∫I.
pub fn evaluate_plan(plan: &BeadPlan, dec: &Decorator, forms: &[&[Cyclo]]) -> Cyclo {
    let r = Resolved::new(plan, dec);
    let n = plan.components.len();
    let nj = plan.junctions.len();
    let mut table: HashMap<Vec<u32>, Cyclo> = HashMap::new();
    table.insert(vec![OPEN; nj], plan.scalar.clone());
    for c in 0..n {
        let prods: Vec<(Vec<u32>, Cyclo)> = component_products(&r, c)
            .into_iter()
            .map(|(k, p)| (k, p.pair(forms[c])))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let mut next: HashMap<Vec<u32>, Cyclo> = HashMap::new();
        for (k1, a) in &table {
            for (k2, b) in &prods {
                if let Some(k) = merge(k1, k2) {
                    let v = a * b;
                    match next.get_mut(&k) {
                        Some(e) => *e += &v,
                        None => {
                            next.insert(k, v);
                        }
                    }
                }
            }
        }
        table = close_junctions(plan, c + 1, next, |a, b| a + b);
    }
    table.values().fold(Cyclo::zero(), |acc, v| acc + v.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Raw,
    Normalized,
}

/// Applies μ^R to every leg; in normalized mode divides by α₊^{σ₊}·α₋^{σ₋}.
pub fn evaluate_tau(
    int_i: &TensorElement,
    ints: &IntegralSet,
    sig: (usize, usize),
    mode: Mode,
    alphas: (&Cyclo, &Cyclo),
) -> Result<Cyclo, QinvError> {
    let raw = int_i.evaluate_all(&ints.mu_right);
    normalize(raw, sig, mode, alphas)
}

/// raw · α₊^{−σ₊} · α₋^{−σ₋} in normalized mode.
pub fn normalize(
    raw: Cyclo,
    sig: (usize, usize),
    mode: Mode,
    alphas: (&Cyclo, &Cyclo),
) -> Result<Cyclo, QinvError> {
    if mode == Mode::Raw {
        return Ok(raw);
    }
    let ap = alphas
        .0
        .pow(-(sig.0 as i64))
        .map_err(|_| QinvError::NonModular("α₊ = 0".into()))?;
    let am = alphas
        .1
        .pow(-(sig.1 as i64))
        .map_err(|_| QinvError::NonModular("α₋ = 0".into()))?;
    Ok(raw * ap * am)
}
