//! Scenario files and the end-to-end cup-product construction.
//!
//! From a quotient `Q`, a modulus `n` and two normalized 2-cocycles `c, c′`
//! on `Q` with values in `(1/n)Z/Z`, the pipeline builds the central
//! extension `G = Z_n ×_c Q`, the anomaly `π = c⌣c′`, and the explicit
//! trivialization `ω = c₀⌣ρ*c′` of `ρ*π`, then runs [`full_report`].
//!
//! Scenario JSON (schema `"1"`):
//!
//! ```json
//! {
//!   "schema": "1",
//!   "name": "flagship",
//!   "quotient": {"kind": "cyclic", "n": 2},
//!   "modulus": 2,
//!   "c": {"kind": "carry", "n": 2},
//!   "cprime": {"kind": "carry", "n": 2},
//!   "category": "trivial",
//!   "options": {"witness_cap": 10, "guardrail": 20000}
//! }
//! ```
//!
//! Groups are `cyclic`, `symmetric`, `product`, `table` or
//! `central_extension`. Cochains are either explicit
//! (`{"degree": 2, "modulus": 2, "entries": {"1,1": "1/2"}}`, unlisted slots
//! zero) or one of `carry`, `zero`, `cup`, `pullback`. A custom category
//! gives the object group, its associator and a `G`-action, where elements
//! of `G` are indexed `a·|Q| + q`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::anomaly::{full_report, AnomalySetup};
use crate::category::{
    check_action_axioms, check_crossed_pentagon, check_pentagon, CrossedProductCategory, PointedCategory,
    PointedGAction,
};
use crate::cochain::{table_len, Cochain};
use crate::cohomology::DEFAULT_GUARDRAIL;
use crate::error::{invalid, precondition, Error, Result};
use crate::group::{central_extension, FiniteGroup, GroupHom};
use crate::report::{Report, VerifyOptions, DEFAULT_WITNESS_CAP};
use crate::scalar::{lcm, UnitScalar};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    Table {
        mult: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    CentralExtension {
        quotient: Box<GroupSpec>,
        modulus: u64,
        sigma: Box<CochainSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HomSpec {
    /// Projection of a `product` group onto one factor.
    Projection { factor: usize },
    /// An explicit map into `target`, by element index.
    Map { target: GroupSpec, map: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CochainSpec {
    Named(NamedCochain),
    Explicit(ExplicitCochain),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NamedCochain {
    /// `c(a,b) = floor((a+b)/n)/n` on a group with the table of `Z_n`.
    Carry { n: usize },
    Zero { degree: usize, modulus: u64 },
    Cup { left: Box<CochainSpec>, right: Box<CochainSpec> },
    Pullback { hom: HomSpec, of: Box<CochainSpec> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitCochain {
    /// Optional; when given it must match the group the cochain lives on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub degree: usize,
    pub modulus: u64,
    /// `"g1,..,gk" -> "p/q"`; unlisted slots are zero.
    #[serde(default)]
    pub entries: BTreeMap<String, UnitScalar>,
}

impl ExplicitCochain {
    /// Lists the nonzero values of `c`.
    pub fn from_cochain(c: &Cochain) -> Self {
        let entries = c
            .nonzero_entries()
            .map(|(args, v)| (args.iter().map(usize::to_string).collect::<Vec<_>>().join(","), v))
            .collect();
        ExplicitCochain { group: None, degree: c.degree(), modulus: c.modulus(), entries }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinCategory {
    /// `Vec` with one simple object and the trivial action.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryChoice {
    Builtin(BuiltinCategory),
    Custom(Box<CategorySpec>),
}

impl Default for CategoryChoice {
    fn default() -> Self {
        CategoryChoice::Builtin(BuiltinCategory::Trivial)
    }
}

/// A pointed category `Vec(A, α)`, optionally with an action and a twist.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: GroupSpec,
    /// Defaults to zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assoc: Option<CochainSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    /// Only meaningful for the `pentagon` command: forms `C ⋊_ω K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    /// Defaults to the group the context supplies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acting: Option<GroupSpec>,
    /// One permutation of the objects per acting element; empty means all identity.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub object_act: Vec<Vec<usize>>,
    /// `"g" -> ψ^g`, a 2-cochain on the objects. Missing entries are zero.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub psi: BTreeMap<String, CochainSpec>,
    /// `"g,h" -> χ_{g,h}`, a 1-cochain on the objects. Missing entries are zero.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chi: BTreeMap<String, CochainSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSpec {
    pub group: GroupSpec,
    pub omega: CochainSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "target", rename_all = "snake_case", deny_unknown_fields)]
pub enum Perturbation {
    /// Adds a scalar to `ω` at a `G`-triple.
    Omega { at: Vec<usize>, add: UnitScalar },
    /// Adds a scalar to `π` at a `Q`-quadruple.
    Pi { at: Vec<usize>, add: UnitScalar },
    /// Replaces `γ(q,r)` by another kernel element (index into `K`).
    Gamma { at: Vec<usize>, kernel_element: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default = "default_witness_cap")]
    pub witness_cap: usize,
    /// Maximum number of slots of any cochain table the pipeline builds.
    #[serde(default = "default_guardrail")]
    pub guardrail: usize,
}

fn default_witness_cap() -> usize {
    DEFAULT_WITNESS_CAP
}

fn default_guardrail() -> usize {
    DEFAULT_GUARDRAIL
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        ScenarioOptions { workers: None, witness_cap: DEFAULT_WITNESS_CAP, guardrail: DEFAULT_GUARDRAIL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: String,
    pub name: String,
    pub quotient: GroupSpec,
    pub modulus: u64,
    pub c: CochainSpec,
    pub cprime: CochainSpec,
    #[serde(default)]
    pub category: CategoryChoice,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub perturbations: Vec<Perturbation>,
    #[serde(default)]
    pub options: ScenarioOptions,
}

impl Scenario {
    /// `Q = Z₂`, `n = 2`, `c = c′ = carry`, trivial category.
    pub fn flagship() -> Self {
        let carry = CochainSpec::Named(NamedCochain::Carry { n: 2 });
        Scenario {
            schema: SCHEMA_VERSION.into(),
            name: "flagship".into(),
            quotient: GroupSpec::Cyclic { n: 2 },
            modulus: 2,
            c: carry.clone(),
            cprime: carry,
            category: CategoryChoice::default(),
            perturbations: Vec::new(),
            options: ScenarioOptions::default(),
        }
    }

    /// `Q = Z₂ × Z₂`, `n = 2`, with `c` and `c′` the carry cocycle pulled
    /// back along the first and second projection.
    pub fn klein_cup() -> Self {
        let pulled = |factor| {
            CochainSpec::Named(NamedCochain::Pullback {
                hom: HomSpec::Projection { factor },
                of: Box::new(CochainSpec::Named(NamedCochain::Carry { n: 2 })),
            })
        };
        Scenario {
            name: "klein_cup".into(),
            quotient: GroupSpec::Product { factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Cyclic { n: 2 }] },
            c: pulled(0),
            cprime: pulled(1),
            ..Scenario::flagship()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if s.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema version {:?}", s.schema)));
        }
        Ok(s)
    }

    /// Pretty JSON with a trailing newline; loading and saving this text
    /// reproduces it byte for byte.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("scenario serializes");
        out.push('\n');
        out
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Scenario::from_json(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { witness_cap: self.options.witness_cap }
    }
}

/// A resolved group, remembering the factors of a `product`.
#[derive(Clone, Debug)]
pub struct ResolvedGroup {
    pub group: Arc<FiniteGroup>,
    pub factors: Vec<Arc<FiniteGroup>>,
}

impl ResolvedGroup {
    fn plain(group: Arc<FiniteGroup>) -> Self {
        ResolvedGroup { group, factors: Vec::new() }
    }
}

/// Turns specs into groups and cochains, refusing tables above `guardrail` slots.
#[derive(Clone, Copy, Debug)]
pub struct Resolver {
    pub guardrail: usize,
}

impl Default for Resolver {
    fn default() -> Self {
        Resolver { guardrail: DEFAULT_GUARDRAIL }
    }
}

impl Resolver {
    pub fn new(guardrail: usize) -> Self {
        Resolver { guardrail }
    }

    fn check_table(&self, order: usize, degree: usize) -> Result<()> {
        match table_len(order, degree) {
            Some(n) if n <= self.guardrail => Ok(()),
            _ => Err(Error::ResourceLimit(format!(
                "a degree-{degree} cochain table on a group of order {order} exceeds the guardrail of {} slots",
                self.guardrail
            ))),
        }
    }

    pub fn group(&self, spec: &GroupSpec) -> Result<ResolvedGroup> {
        Ok(match spec {
            GroupSpec::Cyclic { n } => ResolvedGroup::plain(Arc::new(FiniteGroup::cyclic(*n)?)),
            GroupSpec::Symmetric { n } => ResolvedGroup::plain(Arc::new(FiniteGroup::symmetric(*n)?)),
            GroupSpec::Product { factors } => {
                let factors = factors.iter().map(|f| Ok(self.group(f)?.group)).collect::<Result<Vec<_>>>()?;
                let group = Arc::new(FiniteGroup::direct_product(&factors)?);
                ResolvedGroup { group, factors }
            }
            GroupSpec::Table { mult, labels } => {
                ResolvedGroup::plain(Arc::new(FiniteGroup::from_table(mult.clone(), labels.clone())?))
            }
            GroupSpec::CentralExtension { quotient, modulus, sigma } => {
                let q = self.group(quotient)?;
                let sigma = self.cochain(sigma, &q)?;
                ResolvedGroup::plain(central_extension(q.group, *modulus, &sigma)?.g().clone())
            }
        })
    }

    /// Resolves `spec` as a cochain on `ctx`.
    pub fn cochain(&self, spec: &CochainSpec, ctx: &ResolvedGroup) -> Result<Cochain> {
        let g = &ctx.group;
        match spec {
            CochainSpec::Explicit(e) => {
                if let Some(gs) = &e.group {
                    if *self.group(gs)?.group != **g {
                        return Err(invalid("explicit cochain names a different group than its context"));
                    }
                }
                self.check_table(g.order(), e.degree)?;
                let mut entries = Vec::with_capacity(e.entries.len());
                for (key, v) in &e.entries {
                    entries.push((parse_tuple(key, e.degree, g.order())?, *v));
                }
                Cochain::from_entries(g.clone(), e.degree, e.modulus, entries)
            }
            CochainSpec::Named(NamedCochain::Carry { n }) => {
                if **g != FiniteGroup::cyclic(*n)? {
                    return Err(invalid(format!("carry cocycle needs the group Z/{n}")));
                }
                self.check_table(g.order(), 2)?;
                Ok(Cochain::carry_on(g.clone()))
            }
            CochainSpec::Named(NamedCochain::Zero { degree, modulus }) => {
                self.check_table(g.order(), *degree)?;
                if *modulus == 0 {
                    return Err(invalid("modulus must be positive"));
                }
                Ok(Cochain::zero(g.clone(), *degree, *modulus))
            }
            CochainSpec::Named(NamedCochain::Cup { left, right }) => {
                let l = self.cochain(left, ctx)?;
                let r = self.cochain(right, ctx)?;
                self.check_table(g.order(), l.degree() + r.degree())?;
                l.cup(&r)
            }
            CochainSpec::Named(NamedCochain::Pullback { hom, of }) => {
                let (hom, target) = match hom {
                    HomSpec::Projection { factor } => {
                        if ctx.factors.is_empty() {
                            return Err(invalid("projection pullback needs a product group"));
                        }
                        let h = GroupHom::projection(g.clone(), &ctx.factors, *factor)?;
                        let t = ResolvedGroup::plain(h.target().clone());
                        (h, t)
                    }
                    HomSpec::Map { target, map } => {
                        let t = self.group(target)?;
                        (GroupHom::new(g.clone(), t.group.clone(), map.clone())?, t)
                    }
                };
                let f = self.cochain(of, &target)?;
                self.check_table(g.order(), f.degree())?;
                f.pullback(&hom)
            }
        }
    }

    /// Builds `Vec(A, α)` and, if given, the action of `acting` (or of the
    /// action's own `acting` group when `acting` is `None`).
    pub fn category(
        &self,
        spec: &CategorySpec,
        acting: Option<&ResolvedGroup>,
    ) -> Result<(PointedCategory, Option<PointedGAction>)> {
        let objects = self.group(&spec.objects)?;
        let assoc = match &spec.assoc {
            Some(a) => self.cochain(a, &objects)?,
            None => Cochain::zero(objects.group.clone(), 3, 1),
        };
        let cat = PointedCategory::new(objects.group.clone(), assoc)?;
        let Some(a) = &spec.action else {
            return Ok((cat, None));
        };
        let acting = match (&a.acting, acting) {
            (Some(gs), ctx) => {
                let g = self.group(gs)?;
                if let Some(ctx) = ctx {
                    if *g.group != *ctx.group {
                        return Err(invalid("action's acting group does not match its context"));
                    }
                }
                g.group
            }
            (None, Some(ctx)) => ctx.group.clone(),
            (None, None) => return Err(invalid("action needs an acting group")),
        };
        Ok((cat, Some(self.action(a, acting, &objects)?)))
    }

    fn action(&self, spec: &ActionSpec, acting: Arc<FiniteGroup>, objects: &ResolvedGroup) -> Result<PointedGAction> {
        let (ng, na) = (acting.order(), objects.group.order());
        let object_act = if spec.object_act.is_empty() { vec![(0..na).collect(); ng] } else { spec.object_act.clone() };
        let mut psi = vec![Cochain::zero(objects.group.clone(), 2, 1); ng];
        for (key, c) in &spec.psi {
            let g = parse_tuple(key, 1, ng)?[0];
            psi[g] = self.cochain(c, objects)?;
        }
        let mut chi = vec![Cochain::zero(objects.group.clone(), 1, 1); ng * ng];
        for (key, c) in &spec.chi {
            let gh = parse_tuple(key, 2, ng)?;
            chi[gh[0] * ng + gh[1]] = self.cochain(c, objects)?;
        }
        PointedGAction::new(acting, objects.group.clone(), object_act, psi, chi)
    }
}

/// Parses `"g1,..,gk"` into `k` indices below `bound`.
pub fn parse_tuple(key: &str, len: usize, bound: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = if key.trim().is_empty() { Vec::new() } else { key.split(',').collect() };
    if parts.len() != len {
        return Err(Error::Parse(format!("key {key:?} should list {len} indices")));
    }
    parts
        .iter()
        .map(|p| {
            let x: usize = p.trim().parse().map_err(|_| Error::Parse(format!("bad index {p:?} in key {key:?}")))?;
            if x >= bound {
                return Err(invalid(format!("index {x} in key {key:?} is out of range (< {bound})")));
            }
            Ok(x)
        })
        .collect()
}

/// The same values as `c` stored mod `n`, which must be able to hold them.
fn at_modulus(c: &Cochain, n: u64, what: &str) -> Result<Cochain> {
    Cochain::from_fn(c.group().clone(), c.degree(), n, |x| c.value(x))
        .map_err(|_| precondition(format!("{what} has values that are not multiples of 1/{n}")))
}

/// Runs the cup-product construction. Errors on cocycle preconditions, on
/// the guardrail, and if either internal identity fails (which would be a
/// bug).
pub fn build_cup_scenario(s: &Scenario) -> Result<AnomalySetup> {
    let res = Resolver::new(s.options.guardrail);
    let n = s.modulus;
    if n == 0 {
        return Err(invalid("modulus must be positive"));
    }
    let q = res.group(&s.quotient)?;
    let nq = q.group.order();
    res.check_table(nq, 4)?;
    res.check_table(nq * n as usize, 3)?;

    let mut cs = Vec::new();
    for (spec, what) in [(&s.c, "c"), (&s.cprime, "cprime")] {
        let c = res.cochain(spec, &q)?;
        if c.degree() != 2 {
            return Err(invalid(format!("{what} must have degree 2")));
        }
        if !c.is_cocycle() {
            return Err(precondition(format!("{what} is not a cocycle")));
        }
        cs.push(at_modulus(&c, n, what)?);
    }
    let (c, cprime) = (&cs[0], &cs[1]);
    let pi = c.cup(cprime)?;
    let ext = central_extension(q.group.clone(), n, c)?;
    let g = ext.g().clone();

    // c₀(a,q) = −a/n, so that d(c₀) = ρ*c under the product law (a+b+n·c, qr)
    let c0 = Cochain::from_fn(g.clone(), 1, n, |x| UnitScalar::new(-((x[0] / nq) as i64), n))?;
    if c0.differential() != c.pullback(ext.rho())? {
        return Err(invalid("internal: d(c0) differs from the pulled-back extension cocycle"));
    }
    let omega = c0.cup(&cprime.pullback(ext.rho())?)?;
    if omega.differential() != pi.pullback(ext.rho())? {
        return Err(invalid("internal: d(omega) differs from the pulled-back anomaly"));
    }

    let gr = ResolvedGroup::plain(g.clone());
    let (category, action) = match &s.category {
        CategoryChoice::Builtin(BuiltinCategory::Trivial) => {
            let one = Arc::new(FiniteGroup::cyclic(1)?);
            (PointedCategory::trivial(one.clone()), PointedGAction::trivial(g.clone(), one))
        }
        CategoryChoice::Custom(spec) => {
            if spec.twist.is_some() {
                return Err(invalid("a scenario category takes no twist; it comes from the extension"));
            }
            let (cat, act) = res.category(spec, Some(&gr))?;
            let act = act.unwrap_or_else(|| PointedGAction::trivial(g.clone(), cat.objects().clone()));
            (cat, act)
        }
    };
    AnomalySetup::new(pi, ext, omega, category, action)
}

/// Applies one negative-control perturbation.
pub fn perturb(s: &AnomalySetup, p: &Perturbation) -> Result<AnomalySetup> {
    let bump = |c: &Cochain, at: &[usize], add: UnitScalar| -> Result<Cochain> {
        if at.len() != c.degree() || at.iter().any(|&x| x >= c.group().order()) {
            return Err(invalid(format!("perturbation position {at:?} is not a slot")));
        }
        let mut out = c.with_modulus(lcm(c.modulus(), add.denominator()))?;
        out.set(at, c.value(at) + add)?;
        Ok(out)
    };
    match p {
        Perturbation::Omega { at, add } => s.with_omega(bump(s.omega(), at, *add)?),
        Perturbation::Pi { at, add } => s.with_pi(bump(s.pi(), at, *add)?),
        Perturbation::Gamma { at, kernel_element } => {
            let nq = s.q().order();
            match at.as_slice() {
                &[q, r] if q < nq && r < nq => s.with_gamma(q, r, *kernel_element),
                _ => Err(invalid(format!("gamma perturbation position {at:?} is not a pair in Q"))),
            }
        }
    }
}

/// Runs `f` on a pool of `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(invalid("worker count must be positive")),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::ResourceLimit(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Builds, perturbs and verifies a scenario.
pub fn run_scenario(s: &Scenario) -> Result<Report> {
    let opts = s.verify_options();
    with_workers(s.options.workers, || {
        let mut setup = build_cup_scenario(s)?;
        for p in &s.perturbations {
            setup = perturb(&setup, p)?;
        }
        Ok(full_report(&setup, &opts))
    })?
}

pub fn run_scenario_file(path: &Path) -> Result<Report> {
    run_scenario(&Scenario::load(path)?)
}

/// `0` pass, `1` fail, `2` error.
pub fn exit_code(outcome: &Result<Report>) -> i32 {
    match outcome {
        Ok(r) if r.passed() => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

/// Pentagon report for a category file: the pentagon of `α`, the action
/// axioms when an action is given, and the crossed-product pentagon when a
/// twist is given.
pub fn pentagon_report(spec: &CategorySpec, resolver: &Resolver, opts: &VerifyOptions) -> Result<Report> {
    let twist_group = spec.twist.as_ref().map(|t| resolver.group(&t.group)).transpose()?;
    let (cat, act) = resolver.category(spec, twist_group.as_ref())?;
    let mut families = vec![check_pentagon(&cat, opts)];
    if let Some(act) = &act {
        families.extend(check_action_axioms(&cat, act, opts));
    }
    if let (Some(t), Some(k)) = (&spec.twist, twist_group) {
        let omega = resolver.cochain(&t.omega, &k)?;
        if omega.degree() != 3 {
            return Err(invalid("twist must have degree 3"));
        }
        let act = act.unwrap_or_else(|| PointedGAction::trivial(k.group.clone(), cat.objects().clone()));
        let d = CrossedProductCategory::new_unchecked(cat, k.group, act, omega)?;
        families.push(check_crossed_pentagon(&d, opts));
    }
    Ok(Report::new(families))
}

/// Parses a group argument: `cyclic:N`, `symmetric:N`, `product:a,b,..`
/// (cyclic factors), inline JSON, or a path to a JSON file.
pub fn parse_group_arg(arg: &str) -> Result<GroupSpec> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad group size {s:?}")));
    if let Some(n) = arg.strip_prefix("cyclic:") {
        return Ok(GroupSpec::Cyclic { n: num(n)? });
    }
    if let Some(n) = arg.strip_prefix("symmetric:") {
        return Ok(GroupSpec::Symmetric { n: num(n)? });
    }
    if let Some(list) = arg.strip_prefix("product:") {
        let factors = list.split(',').map(|n| Ok(GroupSpec::Cyclic { n: num(n)? })).collect::<Result<_>>()?;
        return Ok(GroupSpec::Product { factors });
    }
    read_json_arg(arg)
}

/// Parses inline JSON (starting with `{` or `"`) or reads it from a file.
pub fn read_json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('"') {
        return serde_json::from_str(arg).map_err(|e| Error::Parse(e.to_string()));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}
