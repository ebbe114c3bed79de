//! Anomalous actions of `Q` on `D = C ⋊_{ω|K} K` induced from a `G`-action
//! on `C` and a cochain `ω` on `G` with `dω = ρ^*π`, and exhaustive checks
//! of every coherence equation.
//!
//! The induced structure is expressed through the ambient product
//! `E = C ⋊_ω G`, whose associator uses the full (non-closed) `ω`. With
//! `T_g = [I, g]`:
//!
//! - `q_*[a,k] = [q̂·a, q̂kq̂⁻¹]`
//! - `ψ̃^q(X,Y) = α^E(X',T,Y) − α^E(X',Y',T) − α^E(T,X,Y)`, where `T = T_q̂`
//!   and primes denote `q_*`
//! - `χ̃_{q,r}(X) = α^E(X'',T_q̂,T_r̂) − α^E(T_q̂,X',T_r̂) + α^E(T_q̂,T_r̂,X)
//!   − α^E(X'',U,T_qr) − α^E(U,T_qr,X) + α^E(U,Y,T_qr)`, where
//!   `X' = r_*X`, `X'' = q_*r_*X`, `Y = (qr)_*X`, `U = [I, γ(q,r)]`
//! - `Ω_{q,r,s} = ω(q̂,r̂,ŝ)`
//!
//! Every `ω` term above has a kernel argument, so only `ω` near `K` enters
//! the 1- and 2-cell data; the `C` parts expand to
//! `ψ^q̂(a,k·b) − χ_{q̂,k}(b) + χ_{k^q̂,q̂}(b)` and
//! `χ_{q̂,r̂}(a) − χ_{γ,(qr)^}(a)`.

use std::sync::Arc;

use crate::category::{
    check_action_axioms, check_crossed_pentagon, check_pentagon, CrossedProductCategory, PointedCategory,
    PointedGAction,
};
use crate::cochain::{encode, Cochain};
use crate::error::{invalid, Result};
use crate::group::{ExtensionData, FiniteGroup};
use crate::report::{check_family, scalar_check, Check, FamilyReport, Report, VerifyOptions};
use crate::scalar::{lcm, UnitScalar};

/// The full input bundle plus derived `ω|_K` and `D`.
#[derive(Clone, Debug)]
pub struct AnomalySetup {
    pi: Cochain,
    ext: ExtensionData,
    gamma: Vec<usize>,
    omega: Cochain,
    category: PointedCategory,
    action: PointedGAction,
    omega_k: Cochain,
    ambient: CrossedProductCategory,
    d: CrossedProductCategory,
}

impl AnomalySetup {
    /// Checks that the pieces fit together; the algebraic hypotheses are
    /// not enforced here but reported by [`full_report`].
    pub fn new(
        pi: Cochain,
        ext: ExtensionData,
        omega: Cochain,
        category: PointedCategory,
        action: PointedGAction,
    ) -> Result<Self> {
        if pi.degree() != 4 || **pi.group() != **ext.q() {
            return Err(invalid("pi must be a 4-cochain on the quotient"));
        }
        if omega.degree() != 3 || **omega.group() != **ext.g() {
            return Err(invalid("omega must be a 3-cochain on the extension"));
        }
        if **action.acting() != **ext.g() || **action.objects() != **category.objects() {
            return Err(invalid("action must be an action of the extension on the category"));
        }
        let nq = ext.q().order();
        let gamma = (0..nq * nq).map(|i| ext.gamma(i / nq, i % nq)).collect();
        let omega_k = omega.restrict(&ext)?;
        let act_k = action.restrict(&ext.embedding())?;
        let d = CrossedProductCategory::new_unchecked(category.clone(), ext.kernel_group().clone(), act_k, omega_k.clone())?;
        let ambient = CrossedProductCategory::new_unchecked(category.clone(), ext.g().clone(), action.clone(), omega.clone())?;
        Ok(AnomalySetup { pi, ext, gamma, omega, category, action, omega_k, ambient, d })
    }

    /// The same setup with a different `ω`.
    pub fn with_omega(&self, omega: Cochain) -> Result<Self> {
        let mut s = AnomalySetup::new(self.pi.clone(), self.ext.clone(), omega, self.category.clone(), self.action.clone())?;
        s.gamma = self.gamma.clone();
        Ok(s)
    }

    pub fn with_pi(&self, pi: Cochain) -> Result<Self> {
        let mut s = AnomalySetup::new(pi, self.ext.clone(), self.omega.clone(), self.category.clone(), self.action.clone())?;
        s.gamma = self.gamma.clone();
        Ok(s)
    }

    pub fn with_action(&self, action: PointedGAction) -> Result<Self> {
        let mut s = AnomalySetup::new(self.pi.clone(), self.ext.clone(), self.omega.clone(), self.category.clone(), action)?;
        s.gamma = self.gamma.clone();
        Ok(s)
    }

    /// Overrides one `γ` entry (a kernel index), as a negative control.
    pub fn with_gamma(&self, q: usize, r: usize, k: usize) -> Result<Self> {
        if k >= self.ext.kernel_group().order() {
            return Err(invalid("kernel index out of range"));
        }
        let mut s = self.clone();
        let nq = self.nq();
        s.gamma[q * nq + r] = k;
        Ok(s)
    }

    pub fn q(&self) -> &Arc<FiniteGroup> {
        self.ext.q()
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        self.ext.g()
    }

    pub fn pi(&self) -> &Cochain {
        &self.pi
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    pub fn omega_k(&self) -> &Cochain {
        &self.omega_k
    }

    pub fn ext(&self) -> &ExtensionData {
        &self.ext
    }

    pub fn category(&self) -> &PointedCategory {
        &self.category
    }

    pub fn action(&self) -> &PointedGAction {
        &self.action
    }

    /// `D = C ⋊_{ω|K} K`.
    pub fn crossed(&self) -> &CrossedProductCategory {
        &self.d
    }

    fn nq(&self) -> usize {
        self.ext.q().order()
    }

    /// Number of simple objects of `D`.
    pub fn object_count(&self) -> usize {
        self.d.object_count()
    }

    /// `γ(q,r)` as a kernel index (after any override).
    pub fn gamma(&self, q: usize, r: usize) -> usize {
        self.gamma[q * self.nq() + r]
    }

    /// `U_{q,r} = [I, γ(q,r)]` as an object of `D`.
    pub fn u(&self, q: usize, r: usize) -> usize {
        self.d.object(self.category.objects().identity(), self.gamma(q, r))
    }

    /// `q_*X` on objects of `D`.
    pub fn push(&self, q: usize, x: usize) -> usize {
        let (a, k) = self.d.parts(x);
        let g = self.ext.g();
        let lift = self.ext.lift(q);
        let kg = g.conjugate(self.ext.kernel_elems()[k], lift);
        self.d.object(self.action.act(lift, a), self.ext.kernel_index(kg).expect("K is normal"))
    }

    fn to_ambient(&self, x: usize) -> usize {
        let (a, k) = self.d.parts(x);
        self.ambient.object(a, self.ext.kernel_elems()[k])
    }

    fn t(&self, g: usize) -> usize {
        self.ambient.object(self.category.objects().identity(), g)
    }

    fn push_ambient(&self, g: usize, x: usize) -> usize {
        let (a, k) = self.ambient.parts(x);
        self.ambient.object(self.action.act(g, a), self.ext.g().conjugate(k, g))
    }

    /// lcm of every modulus feeding the scalars.
    pub fn denominator_bound(&self) -> u64 {
        [self.omega.modulus(), self.pi.modulus(), self.category.assoc_cochain().modulus(), self.action.modulus()]
            .into_iter()
            .fold(1, lcm)
    }
}

/// `ψ̃^q(X, Y)` for objects of `D`.
pub fn psi_tilde(s: &AnomalySetup, q: usize, x: usize, y: usize) -> UnitScalar {
    let e = &s.ambient;
    let g = s.ext.lift(q);
    let t = s.t(g);
    let (xe, ye) = (s.to_ambient(x), s.to_ambient(y));
    let (xp, yp) = (s.push_ambient(g, xe), s.push_ambient(g, ye));
    e.assoc(xp, t, ye) - e.assoc(xp, yp, t) - e.assoc(t, xe, ye)
}

/// `χ̃_{q,r}(X)` for an object of `D`.
pub fn chi_tilde(s: &AnomalySetup, q: usize, r: usize, x: usize) -> UnitScalar {
    let e = &s.ambient;
    let (qh, rh) = (s.ext.lift(q), s.ext.lift(r));
    let qrh = s.ext.lift(s.q().mul(q, r));
    let u = s.t(s.ext.kernel_elems()[s.gamma(q, r)]);
    let (tq, tr, tqr) = (s.t(qh), s.t(rh), s.t(qrh));
    let xe = s.to_ambient(x);
    let x1 = s.push_ambient(rh, xe);
    let x2 = s.push_ambient(qh, x1);
    let y = s.push_ambient(qrh, xe);
    e.assoc(x2, tq, tr) - e.assoc(tq, x1, tr) + e.assoc(tq, tr, xe) - e.assoc(x2, u, tqr) - e.assoc(u, tqr, xe)
        + e.assoc(u, y, tqr)
}

/// `Ω_{q,r,s} = ω(q̂, r̂, ŝ)`.
pub fn omega_mod(s: &AnomalySetup, q: usize, r: usize, t: usize) -> UnitScalar {
    s.omega.value(&[s.ext.lift(q), s.ext.lift(r), s.ext.lift(t)])
}

/// `q_*` with its monoidal structure, tabulated over pairs of objects.
#[derive(Clone, Debug)]
pub struct InducedFunctor {
    pub q: usize,
    pub object_map: Vec<usize>,
    pub psi_tilde: Vec<UnitScalar>,
}

/// `χ̃_{q,r}: q_*r_* ⇒ U_{q,r} ⊗ (qr)_*(−) ⊗ U_{q,r}^{-1}`, tabulated.
#[derive(Clone, Debug)]
pub struct PseudoNatData {
    pub q: usize,
    pub r: usize,
    pub u: usize,
    pub chi_tilde: Vec<UnitScalar>,
}

#[derive(Clone, Debug)]
pub struct ModificationData {
    pub q: usize,
    pub r: usize,
    pub s: usize,
    pub scalar: UnitScalar,
}

/// All induced 1-, 2- and 3-cell data; tables may be edited for negative
/// controls before verification.
#[derive(Clone, Debug)]
pub struct AnomalousAction {
    nq: usize,
    nobj: usize,
    pub functors: Vec<InducedFunctor>,
    pub pseudonat: Vec<PseudoNatData>,
    pub modifications: Vec<ModificationData>,
}

impl AnomalousAction {
    /// Tabulates `q_*`, `ψ̃`, `U`, `χ̃` and `Ω` from the setup.
    pub fn induce(s: &AnomalySetup) -> Self {
        let nq = s.nq();
        let n = s.object_count();
        let functors = (0..nq)
            .map(|q| InducedFunctor {
                q,
                object_map: (0..n).map(|x| s.push(q, x)).collect(),
                psi_tilde: (0..n * n).map(|i| psi_tilde(s, q, i / n, i % n)).collect(),
            })
            .collect();
        let pseudonat = (0..nq * nq)
            .map(|i| {
                let (q, r) = (i / nq, i % nq);
                PseudoNatData { q, r, u: s.u(q, r), chi_tilde: (0..n).map(|x| chi_tilde(s, q, r, x)).collect() }
            })
            .collect();
        let modifications = (0..nq * nq * nq)
            .map(|i| {
                let (q, r, t) = (i / (nq * nq), (i / nq) % nq, i % nq);
                ModificationData { q, r, s: t, scalar: omega_mod(s, q, r, t) }
            })
            .collect();
        AnomalousAction { nq, nobj: n, functors, pseudonat, modifications }
    }

    #[inline]
    pub fn push(&self, q: usize, x: usize) -> usize {
        self.functors[q].object_map[x]
    }

    #[inline]
    pub fn psi_tilde(&self, q: usize, x: usize, y: usize) -> UnitScalar {
        self.functors[q].psi_tilde[x * self.nobj + y]
    }

    #[inline]
    pub fn chi_tilde(&self, q: usize, r: usize, x: usize) -> UnitScalar {
        self.pseudonat[q * self.nq + r].chi_tilde[x]
    }

    #[inline]
    pub fn u(&self, q: usize, r: usize) -> usize {
        self.pseudonat[q * self.nq + r].u
    }

    #[inline]
    pub fn omega_mod(&self, q: usize, r: usize, s: usize) -> UnitScalar {
        self.modifications[(q * self.nq + r) * self.nq + s].scalar
    }

    pub fn set_psi_tilde(&mut self, q: usize, x: usize, y: usize, v: UnitScalar) {
        let n = self.nobj;
        self.functors[q].psi_tilde[x * n + y] = v;
    }

    pub fn set_chi_tilde(&mut self, q: usize, r: usize, x: usize, v: UnitScalar) {
        let nq = self.nq;
        self.pseudonat[q * nq + r].chi_tilde[x] = v;
    }

    pub fn set_omega_mod(&mut self, q: usize, r: usize, s: usize, v: UnitScalar) {
        let nq = self.nq;
        self.modifications[(q * nq + r) * nq + s].scalar = v;
    }
}

/// One labeled edge of a coherence diagram, contributing a signed scalar.
#[derive(Clone, Copy, Debug)]
enum Edge {
    Assoc(i8, usize, usize, usize),
    Psi(i8, usize, usize, usize),
    Chi(i8, usize, usize, usize),
}

fn path_value(s: &AnomalySetup, act: &AnomalousAction, path: &[Edge]) -> UnitScalar {
    path.iter()
        .map(|e| {
            let (sign, v) = match *e {
                Edge::Assoc(sg, x, y, z) => (sg, s.d.assoc(x, y, z)),
                Edge::Psi(sg, q, x, y) => (sg, act.psi_tilde(q, x, y)),
                Edge::Chi(sg, q, r, x) => (sg, act.chi_tilde(q, r, x)),
            };
            if sign < 0 {
                -v
            } else {
                v
            }
        })
        .sum()
}

fn compare_paths(s: &AnomalySetup, act: &AnomalousAction, left: &[Edge], right: &[Edge]) -> Check {
    scalar_check(path_value(s, act, left), path_value(s, act, right))
}

use Edge::{Assoc, Chi, Psi};

fn monoidal_check(s: &AnomalySetup, act: &AnomalousAction, q: usize, x: usize, y: usize, z: usize) -> Check {
    let d = &s.d;
    let left = [Assoc(1, x, y, z), Psi(1, q, x, d.tensor(y, z)), Psi(1, q, y, z)];
    let right = [
        Psi(1, q, d.tensor(x, y), z),
        Psi(1, q, x, y),
        Assoc(1, act.push(q, x), act.push(q, y), act.push(q, z)),
    ];
    compare_paths(s, act, &left, &right)
}

fn pseudonatural_check(s: &AnomalySetup, act: &AnomalousAction, q: usize, r: usize, x: usize, y: usize) -> Check {
    let d = &s.d;
    let qr = s.q().mul(q, r);
    let u = act.u(q, r);
    let (qrx, qry) = (act.push(q, act.push(r, x)), act.push(q, act.push(r, y)));
    let (px, py) = (act.push(qr, x), act.push(qr, y));
    let left = [
        Assoc(-1, qrx, qry, u),
        Chi(1, q, r, y),
        Assoc(1, qrx, u, py),
        Chi(1, q, r, x),
        Assoc(-1, u, px, py),
        Psi(1, qr, x, y),
    ];
    let right = [
        Psi(1, q, act.push(r, x), act.push(r, y)),
        Psi(1, r, x, y),
        Chi(1, q, r, d.tensor(x, y)),
    ];
    compare_paths(s, act, &left, &right)
}

fn modification_check(s: &AnomalySetup, act: &AnomalousAction, q: usize, r: usize, t: usize, x0: usize) -> Check {
    let qg = s.q();
    let (rs, qr) = (qg.mul(r, t), qg.mul(q, r));
    let qrs = qg.mul(qr, t);
    let p = |g: usize, x: usize| act.push(g, x);
    let xplus = p(q, p(r, p(t, x0)));
    let (urs, uq_rs, uqr, uqr_s) = (act.u(r, t), act.u(q, rs), act.u(q, r), act.u(qr, t));
    let qurs = p(q, urs);
    let a = [
        Assoc(1, xplus, qurs, uq_rs),
        Psi(1, q, p(r, p(t, x0)), urs),
        Chi(1, r, t, x0),
        Psi(-1, q, urs, p(rs, x0)),
        Assoc(-1, qurs, p(q, p(rs, x0)), uq_rs),
        Chi(1, q, rs, x0),
        Assoc(1, qurs, uq_rs, p(qrs, x0)),
    ];
    let b = [
        Assoc(1, xplus, uqr, uqr_s),
        Chi(1, q, r, p(t, x0)),
        Assoc(-1, uqr, p(qr, p(t, x0)), uqr_s),
        Chi(1, qr, t, x0),
        Assoc(1, uqr, uqr_s, p(qrs, x0)),
    ];
    compare_paths(s, act, &a, &b)
}

fn pentagonator_check(s: &AnomalySetup, act: &AnomalousAction, q: usize, r: usize, t: usize, w: usize) -> Check {
    let g = s.g();
    let l = |x: usize| s.ext.lift(x);
    let om = |a: usize, b: usize, c: usize| s.omega.value(&[a, b, c]);
    let lhs = act.omega_mod(r, t, w) + om(l(q), g.mul(l(r), l(t)), l(w)) + act.omega_mod(q, r, t);
    let rhs = s.pi.value(&[q, r, t, w]) + om(l(q), l(r), g.mul(l(t), l(w))) + om(g.mul(l(q), l(r)), l(t), l(w));
    scalar_check(lhs, rhs)
}

/// Diagram (monoidality of `q_*`) for one `q` over all object triples.
pub fn verify_monoidal(s: &AnomalySetup, act: &AnomalousAction, q: usize, opts: &VerifyOptions) -> FamilyReport {
    let n = s.object_count();
    check_family("monoidal", &[n, n, n], opts, |x| monoidal_check(s, act, q, x[0], x[1], x[2]))
}

/// Pseudonaturality of `χ̃_{q,r}` over all object pairs.
pub fn verify_pseudonatural(
    s: &AnomalySetup,
    act: &AnomalousAction,
    q: usize,
    r: usize,
    opts: &VerifyOptions,
) -> FamilyReport {
    let n = s.object_count();
    check_family("pseudonatural", &[n, n], opts, |x| pseudonatural_check(s, act, q, r, x[0], x[1]))
}

/// Modification axiom for `(q, r, s)` over all objects.
pub fn verify_modification(
    s: &AnomalySetup,
    act: &AnomalousAction,
    q: usize,
    r: usize,
    t: usize,
    opts: &VerifyOptions,
) -> FamilyReport {
    let n = s.object_count();
    check_family("modification", &[n], opts, |x| modification_check(s, act, q, r, t, x[0]))
}

/// Pentagonator equation at one quadruple.
pub fn verify_pentagonator(
    s: &AnomalySetup,
    act: &AnomalousAction,
    quad: [usize; 4],
    opts: &VerifyOptions,
) -> FamilyReport {
    check_family("pentagonator", &[], opts, |_| pentagonator_check(s, act, quad[0], quad[1], quad[2], quad[3]))
}

/// Families checking the hypotheses on the input data.
pub fn setup_families(s: &AnomalySetup, opts: &VerifyOptions) -> Vec<FamilyReport> {
    let (nq, ng, nk) = (s.nq(), s.g().order(), s.ext.kernel_group().order());
    let q = s.q();
    let g = s.g();
    let mut out = Vec::new();

    let dpi = s.pi.differential();
    out.push(check_family("pi_cocycle", &[nq; 5], opts, |x| {
        scalar_check(dpi.value_at(encode(x, nq)), UnitScalar::ZERO)
    }));

    let dw = s.omega.differential();
    let rho = s.ext.rho();
    out.push(check_family("trivialization", &[ng; 4], opts, |x| {
        let rhs = s.pi.value(&[rho.apply(x[0]), rho.apply(x[1]), rho.apply(x[2]), rho.apply(x[3])]);
        scalar_check(dw.value_at(encode(x, ng)), rhs)
    }));

    let dwk = s.omega_k.differential();
    out.push(check_family("twist_cocycle", &[nk; 4], opts, |x| {
        scalar_check(dwk.value_at(encode(x, nk)), UnitScalar::ZERO)
    }));

    let kel = s.ext.kernel_elems();
    out.push(check_family("extension", &[nq, nq], opts, |x| {
        let l = g.mul(s.ext.lift(x[0]), s.ext.lift(x[1]));
        let r = g.mul(kel[s.gamma(x[0], x[1])], s.ext.lift(q.mul(x[0], x[1])));
        (l != r).then(|| (g.label(l), g.label(r)))
    }));

    out.push(check_family("gamma_identity", &[nq, nq, nq], opts, |x| {
        let (a, b, c) = (x[0], x[1], x[2]);
        let gm = |u: usize, v: usize| kel[s.gamma(u, v)];
        let l = g.mul(gm(a, b), gm(q.mul(a, b), c));
        let r = g.mul(g.conjugate(gm(b, c), s.ext.lift(a)), gm(a, q.mul(b, c)));
        (l != r).then(|| (g.label(l), g.label(r)))
    }));

    out.push(check_pentagon(&s.category, opts));
    out.extend(check_action_axioms(&s.category, &s.action, opts));
    out.push(check_crossed_pentagon(&s.d, opts));
    out
}

/// Families checking the induced data against every coherence equation.
pub fn coherence_families(s: &AnomalySetup, act: &AnomalousAction, opts: &VerifyOptions) -> Vec<FamilyReport> {
    let nq = s.nq();
    let n = s.object_count();
    let q = s.q();
    let d = &s.d;
    let mut out = Vec::new();

    out.push(check_family("functor_objects", &[nq, n, n], opts, |x| {
        let (g, a, b) = (x[0], x[1], x[2]);
        let l = act.push(g, d.tensor(a, b));
        let r = d.tensor(act.push(g, a), act.push(g, b));
        (l != r).then(|| (l.to_string(), r.to_string()))
    }));

    out.push(check_family("monoidal", &[nq, n, n, n], opts, |x| monoidal_check(s, act, x[0], x[1], x[2], x[3])));

    out.push(check_family("pseudonatural_objects", &[nq, nq, n], opts, |x| {
        let (a, b, o) = (x[0], x[1], x[2]);
        let u = act.u(a, b);
        let l = d.tensor(act.push(a, act.push(b, o)), u);
        let r = d.tensor(u, act.push(q.mul(a, b), o));
        (l != r).then(|| (l.to_string(), r.to_string()))
    }));

    out.push(check_family("pseudonatural", &[nq, nq, n, n], opts, |x| {
        pseudonatural_check(s, act, x[0], x[1], x[2], x[3])
    }));

    out.push(check_family("modification_objects", &[nq, nq, nq], opts, |x| {
        let (a, b, c) = (x[0], x[1], x[2]);
        let l = d.tensor(act.push(a, act.u(b, c)), act.u(a, q.mul(b, c)));
        let r = d.tensor(act.u(a, b), act.u(q.mul(a, b), c));
        (l != r).then(|| (l.to_string(), r.to_string()))
    }));

    out.push(check_family("modification", &[nq, nq, nq, n], opts, |x| {
        modification_check(s, act, x[0], x[1], x[2], x[3])
    }));

    out.push(check_family("pentagonator", &[nq; 4], opts, |x| pentagonator_check(s, act, x[0], x[1], x[2], x[3])));

    let bound = s.denominator_bound();
    let (psi_len, chi_len) = (nq * n * n, nq * nq * n);
    out.push(check_family("denominators", &[psi_len + chi_len + nq * nq * nq], opts, |x| {
        let i = x[0];
        let v = if i < psi_len {
            act.psi_tilde(i / (n * n), (i / n) % n, i % n)
        } else if i < psi_len + chi_len {
            let j = i - psi_len;
            act.chi_tilde(j / (nq * n), (j / n) % nq, j % n)
        } else {
            let j = i - psi_len - chi_len;
            act.omega_mod(j / (nq * nq), (j / nq) % nq, j % nq)
        };
        (!bound.is_multiple_of(v.denominator())).then(|| (v.to_string(), format!("a multiple of 1/{bound}")))
    }));
    out
}

/// Everything: hypotheses, `C`, `D`, and all four coherence families.
pub fn full_report(s: &AnomalySetup, opts: &VerifyOptions) -> Report {
    full_report_with(s, &AnomalousAction::induce(s), opts)
}

/// As [`full_report`] with explicitly supplied (possibly edited) data.
pub fn full_report_with(s: &AnomalySetup, act: &AnomalousAction, opts: &VerifyOptions) -> Report {
    let mut families = setup_families(s, opts);
    families.extend(coherence_families(s, act, opts));
    Report::new(families)
}
