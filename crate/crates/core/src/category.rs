//! Skeletal pointed tensor categories `Vec(A, α)`, scalarized group actions
//! on them, and twisted crossed products `C ⋊_ω K`.
//!
//! Simple objects are the elements of `A`, every hom space is 0- or
//! 1-dimensional, so all coherence data reduces to `Q/Z` tables.

use std::sync::Arc;

use crate::cochain::Cochain;
use crate::error::{invalid, precondition, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::report::{check_family, scalar_check, FamilyReport, VerifyOptions};
use crate::scalar::{lcm, UnitScalar};

/// `Vec(A, α)` with strict unit; `α` is a normalized 3-cochain on `A`.
#[derive(Clone, Debug)]
pub struct PointedCategory {
    objects: Arc<FiniteGroup>,
    assoc: Cochain,
}

impl PointedCategory {
    /// Accepts any normalized 3-cochain; whether it is a cocycle is what
    /// [`check_pentagon`] reports.
    pub fn new(objects: Arc<FiniteGroup>, assoc: Cochain) -> Result<Self> {
        if assoc.degree() != 3 || **assoc.group() != *objects {
            return Err(invalid("associator must be a 3-cochain on the object group"));
        }
        Ok(PointedCategory { objects, assoc })
    }

    /// `Vec(A)` with trivial associator.
    pub fn trivial(objects: Arc<FiniteGroup>) -> Self {
        let assoc = Cochain::zero(objects.clone(), 3, 1);
        PointedCategory { objects, assoc }
    }

    pub fn objects(&self) -> &Arc<FiniteGroup> {
        &self.objects
    }

    pub fn assoc_cochain(&self) -> &Cochain {
        &self.assoc
    }

    #[inline]
    pub fn assoc(&self, a: usize, b: usize, c: usize) -> UnitScalar {
        self.assoc.value(&[a, b, c])
    }
}

/// Pentagon over all quadruples:
/// `α(b,c,d) + α(a,bc,d) + α(a,b,c) = α(a,b,cd) + α(ab,c,d)`.
pub fn check_pentagon(c: &PointedCategory, opts: &VerifyOptions) -> FamilyReport {
    let a = c.objects();
    let n = a.order();
    check_family("pentagon", &[n; 4], opts, |x| {
        let (p, q, r, s) = (x[0], x[1], x[2], x[3]);
        let lhs = c.assoc(q, r, s) + c.assoc(p, a.mul(q, r), s) + c.assoc(p, q, r);
        let rhs = c.assoc(p, q, a.mul(r, s)) + c.assoc(a.mul(p, q), r, s);
        scalar_check(lhs, rhs)
    })
}

/// A strictly unital action of `G` on `Vec(A, α)`: `g` permutes objects by
/// an automorphism of `A`, with monoidal structure `ψ^g` and composition
/// isomorphisms `χ_{g,h}`. The unit isomorphism `e_* ≅ id` is the identity.
#[derive(Clone, Debug)]
pub struct PointedGAction {
    acting: Arc<FiniteGroup>,
    objects: Arc<FiniteGroup>,
    object_act: Vec<Vec<usize>>,
    psi: Vec<Cochain>,
    chi: Vec<Cochain>,
}

impl PointedGAction {
    /// Validates shapes and that every `g` acts by an automorphism of `A`,
    /// with `e` acting as the identity. The scalar axioms are left to
    /// [`check_action_axioms`].
    ///
    /// `chi` is indexed by `g·|G| + h`.
    pub fn new(
        acting: Arc<FiniteGroup>,
        objects: Arc<FiniteGroup>,
        object_act: Vec<Vec<usize>>,
        psi: Vec<Cochain>,
        chi: Vec<Cochain>,
    ) -> Result<Self> {
        let (ng, na) = (acting.order(), objects.order());
        if object_act.len() != ng || psi.len() != ng || chi.len() != ng * ng {
            return Err(invalid("action tables have the wrong number of entries"));
        }
        for (g, perm) in object_act.iter().enumerate() {
            if perm.len() != na {
                return Err(invalid(format!("permutation for {g} has the wrong length")));
            }
            let mut seen = vec![false; na];
            for &x in perm {
                if x >= na || seen[x] {
                    return Err(invalid(format!("object map of {g} is not a permutation")));
                }
                seen[x] = true;
            }
            for a in 0..na {
                for b in 0..na {
                    if perm[objects.mul(a, b)] != objects.mul(perm[a], perm[b]) {
                        return Err(invalid(format!("{g} does not act by an automorphism of the objects")));
                    }
                }
            }
        }
        if (0..na).any(|a| object_act[acting.identity()][a] != a) {
            return Err(invalid("identity must act as the identity permutation"));
        }
        for p in &psi {
            if p.degree() != 2 || **p.group() != *objects {
                return Err(invalid("psi entries must be 2-cochains on the objects"));
            }
        }
        for c in &chi {
            if c.degree() != 1 || **c.group() != *objects {
                return Err(invalid("chi entries must be 1-cochains on the objects"));
            }
        }
        Ok(PointedGAction { acting, objects, object_act, psi, chi })
    }

    /// Identity permutations and vanishing `ψ`, `χ`.
    pub fn trivial(acting: Arc<FiniteGroup>, objects: Arc<FiniteGroup>) -> Self {
        let (ng, na) = (acting.order(), objects.order());
        PointedGAction {
            object_act: vec![(0..na).collect(); ng],
            psi: vec![Cochain::zero(objects.clone(), 2, 1); ng],
            chi: vec![Cochain::zero(objects.clone(), 1, 1); ng * ng],
            acting,
            objects,
        }
    }

    pub fn acting(&self) -> &Arc<FiniteGroup> {
        &self.acting
    }

    pub fn objects(&self) -> &Arc<FiniteGroup> {
        &self.objects
    }

    #[inline]
    pub fn act(&self, g: usize, a: usize) -> usize {
        self.object_act[g][a]
    }

    pub fn object_act(&self) -> &[Vec<usize>] {
        &self.object_act
    }

    #[inline]
    pub fn psi(&self, g: usize, a: usize, b: usize) -> UnitScalar {
        self.psi[g].value(&[a, b])
    }

    #[inline]
    pub fn chi(&self, g: usize, h: usize, a: usize) -> UnitScalar {
        self.chi[g * self.acting.order() + h].value(&[a])
    }

    pub fn psi_cochain(&self, g: usize) -> &Cochain {
        &self.psi[g]
    }

    pub fn chi_cochain(&self, g: usize, h: usize) -> &Cochain {
        &self.chi[g * self.acting.order() + h]
    }

    pub fn psi_mut(&mut self, g: usize) -> &mut Cochain {
        &mut self.psi[g]
    }

    pub fn chi_mut(&mut self, g: usize, h: usize) -> &mut Cochain {
        let n = self.acting.order();
        &mut self.chi[g * n + h]
    }

    /// lcm of the moduli of all `ψ` and `χ` tables.
    pub fn modulus(&self) -> u64 {
        self.psi.iter().chain(&self.chi).fold(1, |m, c| lcm(m, c.modulus()))
    }

    /// The action of a group `H` through `emb: H -> G`.
    pub fn restrict(&self, emb: &GroupHom) -> Result<PointedGAction> {
        if **emb.target() != *self.acting {
            return Err(invalid("restriction map does not land in the acting group"));
        }
        let h = emb.source().clone();
        let nh = h.order();
        let object_act = (0..nh).map(|x| self.object_act[emb.apply(x)].clone()).collect();
        let psi = (0..nh).map(|x| self.psi[emb.apply(x)].clone()).collect();
        let mut chi = Vec::with_capacity(nh * nh);
        for x in 0..nh {
            for y in 0..nh {
                chi.push(self.chi_cochain(emb.apply(x), emb.apply(y)).clone());
            }
        }
        PointedGAction::new(h, self.objects.clone(), object_act, psi, chi)
    }
}

/// Every axiom of a strictly unital action, one family each:
/// `action_law`, `unit_psi`, `unit_chi`, `eq1.1`, `eq1.2`, `eq1.3`.
pub fn check_action_axioms(c: &PointedCategory, act: &PointedGAction, opts: &VerifyOptions) -> Vec<FamilyReport> {
    let g = act.acting().clone();
    let a = c.objects().clone();
    let (ng, na) = (g.order(), a.order());
    let e = g.identity();
    if **act.objects() != *a {
        let f = FamilyReport {
            family: "action_objects".into(),
            checked: 1,
            failed: 1,
            witnesses: vec![crate::report::Witness {
                args: vec![],
                lhs: format!("order {}", act.objects().order()),
                rhs: format!("order {na}"),
            }],
        };
        return vec![f];
    }
    let mut out = Vec::new();
    out.push(check_family("action_law", &[ng, ng, na], opts, |x| {
        let (p, q, o) = (x[0], x[1], x[2]);
        let l = act.act(p, act.act(q, o));
        let r = act.act(g.mul(p, q), o);
        (l != r).then(|| (a.label(l), a.label(r)))
    }));
    out.push(check_family("unit_psi", &[na, na], opts, |x| {
        scalar_check(act.psi(e, x[0], x[1]), UnitScalar::ZERO)
    }));
    out.push(check_family("unit_chi", &[ng, na], opts, |x| {
        let (l, r) = (act.chi(e, x[0], x[1]), act.chi(x[0], e, x[1]));
        (!l.is_zero() || !r.is_zero()).then(|| (format!("{l}, {r}"), "0, 0".into()))
    }));
    out.push(check_family("eq1.1", &[ng, ng, ng, na], opts, |x| {
        let (p, q, j, o) = (x[0], x[1], x[2], x[3]);
        let lhs = act.chi(p, q, act.act(j, o)) + act.chi(g.mul(p, q), j, o);
        let rhs = act.chi(q, j, o) + act.chi(p, g.mul(q, j), o);
        scalar_check(lhs, rhs)
    }));
    out.push(check_family("eq1.2", &[ng, na, na, na], opts, |x| {
        let (p, u, v, w) = (x[0], x[1], x[2], x[3]);
        let lhs = c.assoc(act.act(p, u), act.act(p, v), act.act(p, w))
            + act.psi(p, u, v)
            + act.psi(p, a.mul(u, v), w);
        let rhs = act.psi(p, v, w) + act.psi(p, u, a.mul(v, w)) + c.assoc(u, v, w);
        scalar_check(lhs, rhs)
    }));
    out.push(check_family("eq1.3", &[ng, ng, na, na], opts, |x| {
        let (p, q, u, v) = (x[0], x[1], x[2], x[3]);
        let lhs = act.psi(p, act.act(q, u), act.act(q, v)) + act.psi(q, u, v) + act.chi(p, q, a.mul(u, v));
        let rhs = act.chi(p, q, u) + act.chi(p, q, v) + act.psi(g.mul(p, q), u, v);
        scalar_check(lhs, rhs)
    }));
    out
}

/// `C ⋊_ω K`: objects `(a, k)` with index `a·|K| + k`, tensor
/// `(a,k)(b,l) = (a·(k·b), kl)` and associator
/// `ω(k,l,m) + α(a, k·b, (kl)·c) + χ_{k,l}(c) − ψ^k(b, l·c)`.
#[derive(Clone, Debug)]
pub struct CrossedProductCategory {
    base: PointedCategory,
    twisting_group: Arc<FiniteGroup>,
    action: PointedGAction,
    twist: Cochain,
}

impl CrossedProductCategory {
    /// Assembles the data after checking shapes only. Used for negative
    /// controls and for the untwisted ambient product over a full group.
    pub fn new_unchecked(
        base: PointedCategory,
        twisting_group: Arc<FiniteGroup>,
        action: PointedGAction,
        twist: Cochain,
    ) -> Result<Self> {
        if **action.acting() != *twisting_group || **action.objects() != **base.objects() {
            return Err(invalid("action does not match the category and twisting group"));
        }
        if twist.degree() != 3 || **twist.group() != *twisting_group {
            return Err(invalid("twist must be a 3-cochain on the twisting group"));
        }
        Ok(CrossedProductCategory { base, twisting_group, action, twist })
    }

    pub fn base(&self) -> &PointedCategory {
        &self.base
    }

    pub fn twisting_group(&self) -> &Arc<FiniteGroup> {
        &self.twisting_group
    }

    pub fn action(&self) -> &PointedGAction {
        &self.action
    }

    pub fn twist(&self) -> &Cochain {
        &self.twist
    }

    pub fn object_count(&self) -> usize {
        self.base.objects().order() * self.twisting_group.order()
    }

    #[inline]
    pub fn object(&self, a: usize, k: usize) -> usize {
        a * self.twisting_group.order() + k
    }

    #[inline]
    pub fn parts(&self, x: usize) -> (usize, usize) {
        let n = self.twisting_group.order();
        (x / n, x % n)
    }

    pub fn unit(&self) -> usize {
        self.object(self.base.objects().identity(), self.twisting_group.identity())
    }

    #[inline]
    pub fn tensor(&self, x: usize, y: usize) -> usize {
        let ((a, k), (b, l)) = (self.parts(x), self.parts(y));
        let objs = self.base.objects();
        self.object(objs.mul(a, self.action.act(k, b)), self.twisting_group.mul(k, l))
    }

    #[inline]
    pub fn assoc(&self, x: usize, y: usize, z: usize) -> UnitScalar {
        let ((a, k), (b, l), (c, m)) = (self.parts(x), self.parts(y), self.parts(z));
        let kg = &self.twisting_group;
        let act = &self.action;
        self.twist.value(&[k, l, m]) + self.base.assoc(a, act.act(k, b), act.act(kg.mul(k, l), c))
            + act.chi(k, l, c)
            - act.psi(k, b, act.act(l, c))
    }

    /// The category as `Vec(A ⋊ K, α^ω)`. Fails if the object law is not a
    /// group, which happens only when the action law fails.
    pub fn as_pointed(&self) -> Result<PointedCategory> {
        let n = self.object_count();
        let table = (0..n).map(|x| (0..n).map(|y| self.tensor(x, y)).collect()).collect();
        let labels = (0..n)
            .map(|x| {
                let (a, k) = self.parts(x);
                format!("({},{})", self.base.objects().label(a), self.twisting_group.label(k))
            })
            .collect();
        let g = Arc::new(FiniteGroup::from_table(table, Some(labels))?);
        let m = lcm(lcm(self.twist.modulus(), self.base.assoc_cochain().modulus()), self.action.modulus());
        let assoc = Cochain::from_fn(g.clone(), 3, m, |x| self.assoc(x[0], x[1], x[2]))?;
        PointedCategory::new(g, assoc)
    }
}

/// Builds `C ⋊_ω K` after checking that `ω` is a 3-cocycle and that the
/// action satisfies every axiom.
pub fn crossed_product(
    c: &PointedCategory,
    k: Arc<FiniteGroup>,
    act_k: &PointedGAction,
    omega_k: &Cochain,
) -> Result<CrossedProductCategory> {
    let d = CrossedProductCategory::new_unchecked(c.clone(), k, act_k.clone(), omega_k.clone())?;
    if !omega_k.is_cocycle() {
        return Err(precondition("twist is not a 3-cocycle"));
    }
    let opts = VerifyOptions { witness_cap: 1 };
    for f in check_action_axioms(c, act_k, &opts) {
        if !f.passed() {
            return Err(precondition(format!("action fails {} at {:?}", f.family, f.witnesses[0].args)));
        }
    }
    Ok(d)
}

/// Pentagon of `α^ω` over all quadruples of objects of `A × K`.
pub fn check_crossed_pentagon(d: &CrossedProductCategory, opts: &VerifyOptions) -> FamilyReport {
    let n = d.object_count();
    check_family("crossed_pentagon", &[n; 4], opts, |x| {
        let (p, q, r, s) = (x[0], x[1], x[2], x[3]);
        let lhs = d.assoc(q, r, s) + d.assoc(p, d.tensor(q, r), s) + d.assoc(p, q, r);
        let rhs = d.assoc(p, q, d.tensor(r, s)) + d.assoc(d.tensor(p, q), r, s);
        scalar_check(lhs, rhs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    fn gen_z2() -> Cochain {
        Cochain::from_entries(z(2), 3, 2, [(vec![1, 1, 1], UnitScalar::new(1, 2))]).unwrap()
    }

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    #[test]
    fn pentagon_examples() {
        let c = PointedCategory::trivial(z(3));
        assert!(check_pentagon(&c, &opts()).passed());
        let c = PointedCategory::new(z(2), gen_z2()).unwrap();
        let r = check_pentagon(&c, &opts());
        assert_eq!(r.checked, 16);
        assert!(r.passed());
        let bad = Cochain::from_entries(z(4), 3, 4, [(vec![1, 2, 3], UnitScalar::new(1, 4))]).unwrap();
        let c = PointedCategory::new(z(4), bad).unwrap();
        assert!(!check_pentagon(&c, &opts()).passed());
    }

    #[test]
    fn trivial_action_passes() {
        let c = PointedCategory::new(z(2), gen_z2()).unwrap();
        let act = PointedGAction::trivial(z(3), z(2));
        assert!(check_action_axioms(&c, &act, &opts()).iter().all(FamilyReport::passed));
    }

    #[test]
    fn perturbed_chi_breaks_eq11() {
        let c = PointedCategory::trivial(z(2));
        let mut act = PointedGAction::trivial(z(3), z(2));
        *act.chi_mut(1, 2) = Cochain::from_entries(z(2), 1, 2, [(vec![1], UnitScalar::new(1, 2))]).unwrap();
        let reps = check_action_axioms(&c, &act, &opts());
        let f = reps.iter().find(|f| f.family == "eq1.1").unwrap();
        assert!(!f.passed());
    }

    #[test]
    fn rejects_non_automorphism() {
        let r = PointedGAction::new(
            z(2),
            z(3),
            vec![vec![0, 1, 2], vec![1, 0, 2]],
            vec![Cochain::zero(z(3), 2, 1); 2],
            vec![Cochain::zero(z(3), 1, 1); 4],
        );
        assert!(r.is_err());
    }

    #[test]
    fn crossed_product_examples() {
        let trivial_c = PointedCategory::trivial(z(1));
        let act = PointedGAction::trivial(z(2), z(1));
        let d = crossed_product(&trivial_c, z(2), &act, &Cochain::zero(z(2), 3, 2)).unwrap();
        assert!((0..2).all(|x| (0..2).all(|y| (0..2).all(|w| d.assoc(x, y, w).is_zero()))));

        let d = crossed_product(&trivial_c, z(2), &act, &gen_z2()).unwrap();
        assert_eq!(d.assoc(1, 1, 1), UnitScalar::new(1, 2));
        assert!(check_crossed_pentagon(&d, &opts()).passed());

        let c = PointedCategory::new(z(2), gen_z2()).unwrap();
        let act1 = PointedGAction::trivial(z(1), z(2));
        let d = crossed_product(&c, z(1), &act1, &Cochain::zero(z(1), 3, 1)).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for cc in 0..2 {
                    assert_eq!(d.assoc(d.object(a, 0), d.object(b, 0), d.object(cc, 0)), c.assoc(a, b, cc));
                }
            }
        }
        let p = d.as_pointed().unwrap();
        assert_eq!(*p.objects(), *c.objects());
        assert_eq!(*p.assoc_cochain(), *c.assoc_cochain());
    }

    #[test]
    fn generator_twist_with_generator_base() {
        let c = PointedCategory::new(z(2), gen_z2()).unwrap();
        let act = PointedGAction::trivial(z(2), z(2));
        let d = crossed_product(&c, z(2), &act, &gen_z2()).unwrap();
        let r = check_crossed_pentagon(&d, &opts());
        assert_eq!(r.checked, 256);
        assert!(r.passed());
    }

    #[test]
    fn non_cocycle_twist() {
        let c = PointedCategory::trivial(z(1));
        let act = PointedGAction::trivial(z(3), z(1));
        let w = Cochain::from_entries(z(3), 3, 3, [(vec![1, 1, 2], UnitScalar::new(1, 3))]).unwrap();
        assert!(crossed_product(&c, z(3), &act, &w).is_err());
        let d = CrossedProductCategory::new_unchecked(c, z(3), act, w).unwrap();
        assert!(!check_crossed_pentagon(&d, &opts()).passed());
    }
}
