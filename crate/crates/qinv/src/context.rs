//! Everything the engines need about one algebra, computed once.
//!
//! Integral scale: for semisimple members μ^R is rescaled so that Q = 1, which
//! makes the Hennings invariant agree with Reshetikhin–Turaev without inserting
//! anything. Non-semisimple members keep the normalization μ^R(λ) = 1.

use crate::diagram::{self, FramedLinkDiagram, SplitDiagram};
use crate::hennings::{self, BeadPlan, Decorator, Mode};
use crate::hopf::{
    check_modularity, compute_q, derive_ribbon_data, ribbon::proportional, solve_integrals,
    CentralElement, Elem, HopfAlgebra, IntegralSet, Modularity, RibbonData, TensorElement,
};
use crate::scalar::Cyclo;
use crate::zoo::{AlgebraSpec, IrrepCatalog};
use crate::QinvError;

pub struct AlgebraContext {
    pub name: String,
    pub spec: AlgebraSpec,
    pub h: HopfAlgebra,
    pub rd: RibbonData,
    pub ints: IntegralSet,
    pub catalog: IrrepCatalog,
    pub q: CentralElement,
    /// ∫I of the positive and negative blackboard curl.
    pub theta_plus: Elem,
    pub theta_minus: Elem,
    pub modularity: Modularity,
    /// c with (id⊗μ^R)(ω) = c·λ, when it exists.
    pub omega_scale: Option<Cyclo>,
}

impl AlgebraContext {
    pub fn load(name: &str) -> Result<AlgebraContext, QinvError> {
        let spec = AlgebraSpec::parse(name)?;
        let h = spec.build()?;
        let catalog = spec.catalog(&h)?;
        AlgebraContext::from_parts(name, spec, h, catalog)
    }

    /// Derives everything from an algebra and its catalog.
    pub fn from_parts(
        name: &str,
        spec: AlgebraSpec,
        h: HopfAlgebra,
        catalog: IrrepCatalog,
    ) -> Result<AlgebraContext, QinvError> {
        let rd = derive_ribbon_data(&h)?;
        let mut ints = solve_integrals(&h)?;
        let mut q = compute_q(&h, &catalog, &ints)?;
        if spec.is_semisimple() {
            let s = proportional(&q.value, &h.one())
                .filter(|s| !s.is_zero())
                .ok_or_else(|| QinvError::Engine(format!("{name}: Q is not a nonzero scalar")))?;
            ints = ints.rescaled(&s);
            q = compute_q(&h, &catalog, &ints)?;
            if !q.is_one(&h) {
                return Err(QinvError::Engine(format!(
                    "{name}: rescaling did not give Q = 1"
                )));
            }
        }
        let theta = |positive: bool| -> Result<Elem, QinvError> {
            let dec = Decorator {
                h: &h,
                rd: &rd,
                twists: None,
                lambda: None,
            };
            let s = diagram::split(&diagram::fixtures::curl(positive));
            let t = hennings::contract(&hennings::decorate(&s, &dec)?, &dec).to_elem();
            if !CentralElement::new(&h, t.clone()).is_central {
                return Err(QinvError::Engine("curl element is not central".into()));
            }
            Ok(t)
        };
        let theta_plus = theta(true)?;
        let theta_minus = theta(false)?;
        let modularity = check_modularity(&h, &rd, Some(&ints));
        let omega_scale = proportional(
            &rd.omega.contract_leg(1, &ints.mu_right).to_elem(),
            &ints.lambda,
        );
        Ok(AlgebraContext {
            name: name.to_string(),
            spec,
            h,
            rd,
            ints,
            catalog,
            q,
            theta_plus,
            theta_minus,
            modularity,
            omega_scale,
        })
    }

    pub fn decorator(&self) -> Decorator<'_> {
        Decorator {
            h: &self.h,
            rd: &self.rd,
            twists: Some((&self.theta_plus, &self.theta_minus)),
            lambda: Some(&self.ints.lambda),
        }
    }

    pub fn is_semisimple(&self) -> bool {
        self.spec.is_semisimple()
    }

    pub fn bead_plan(&self, s: &SplitDiagram, with_q: bool) -> Result<BeadPlan, QinvError> {
        let plan = hennings::decorate(s, &self.decorator())?;
        if with_q {
            hennings::insert_central(&plan, &self.q, None)
        } else {
            Ok(plan)
        }
    }

    /// ∫I at the canonical basepoints.
    pub fn integral_element(
        &self,
        l: &FramedLinkDiagram,
        with_q: bool,
    ) -> Result<TensorElement, QinvError> {
        let plan = self.bead_plan(&diagram::split(l), with_q)?;
        Ok(hennings::contract(&plan, &self.decorator()))
    }

    /// (μ^R)^{⊗N}(∫I), evaluated without forming ∫I.
    pub fn raw_value(&self, l: &FramedLinkDiagram, with_q: bool) -> Result<Cyclo, QinvError> {
        let plan = self.bead_plan(&diagram::split(l), with_q)?;
        let forms: Vec<&[Cyclo]> = vec![&self.ints.mu_right; l.component_count()];
        Ok(hennings::evaluate_plan(&plan, &self.decorator(), &forms))
    }

    /// α₊, α₋: the raw values of the ±1-framed unknot.
    pub fn alphas(&self, with_q: bool) -> (Cyclo, Cyclo) {
        let a = |t: &Elem| {
            let x = if with_q {
                self.h.mul(&self.q.value, t)
            } else {
                t.clone()
            };
            self.ints.mu_right(&x)
        };
        (a(&self.theta_plus), a(&self.theta_minus))
    }

    pub fn tau(&self, l: &FramedLinkDiagram, mode: Mode, with_q: bool) -> Result<Cyclo, QinvError> {
        let raw = self.raw_value(l, with_q)?;
        let (ap, am) = self.alphas(with_q);
        hennings::normalize(raw, l.signature(), mode, (&ap, &am))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semisimple_members_get_q_equal_to_one() {
        for name in ["group:Z2", "double:Z3", "trivial"] {
            let ctx = AlgebraContext::load(name).unwrap();
            assert!(ctx.q.is_one(&ctx.h), "{name}");
        }
    }

    #[test]
    fn curl_elements_are_ribbon_elements() {
        for name in ["group:Z3", "double:S3", "uq_sl2:3"] {
            let ctx = AlgebraContext::load(name).unwrap();
            assert_eq!(ctx.theta_plus, ctx.rd.v, "{name}");
            assert_eq!(ctx.theta_minus, ctx.rd.v_inv, "{name}");
        }
    }
}
