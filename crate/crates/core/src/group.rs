//! Finite groups as multiplication tables, homomorphisms between them,
//! unital sections of surjections, and the extension data `K -> G -> Q`
//! together with the kernel-valued discrepancy `γ`.
//!
//! Elements are dense indices `0..order`. Every constructor validates its
//! table eagerly; nothing is repaired.

use std::fmt;
use std::sync::Arc;

use crate::cochain::Cochain;
use crate::error::{invalid, precondition, Result};

/// A finite group presented by its full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteGroup {
    /// Two groups are equal when their tables agree; labels are cosmetic.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mult == other.mult
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates `mult` (rows indexed by the left factor) and builds the group.
    ///
    /// Rejects tables that are not square, contain out-of-range entries, are
    /// not Latin squares, lack a two-sided identity, or are not associative.
    pub fn from_table(mult: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(invalid("empty multiplication table"));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!("row {i} has length {} (expected {n})", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(invalid(format!("entry {x} in row {i} is out of range")));
                }
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat, labels)
    }

    fn from_flat(n: usize, flat: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(invalid(format!("{} labels for {n} elements", l.len())));
            }
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = flat[i * n + j];
                if seen[x] {
                    return Err(invalid(format!("row {i} repeats element {x}")));
                }
                seen[x] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = flat[j * n + i];
                if seen[x] {
                    return Err(invalid(format!("column {i} repeats element {x}")));
                }
                seen[x] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x))
            .ok_or_else(|| invalid("table has no two-sided identity"))?;
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(invalid(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| flat[a * n + b] == identity).unwrap())
            .collect();
        Ok(FiniteGroup { order: n, mult: flat, identity, inverse, labels })
    }

    /// The cyclic group `Z_n` with `i·j = (i+j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("cyclic group needs n >= 1"));
        }
        let flat = (0..n * n).map(|x| (x / n + x % n) % n).collect();
        Self::from_flat(n, flat, None)
    }

    /// The symmetric group on `n <= 5` letters.
    ///
    /// Elements are permutations in one-line notation `[p(0), .., p(n-1)]`,
    /// listed lexicographically, so index 0 is the identity. The product
    /// `p·q` applies `q` first: `(p·q)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=5).contains(&n) {
            return Err(invalid(format!("symmetric group needs 1 <= n <= 5, got {n}")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|x| x.as_slice().cmp(p)).unwrap();
        let m = perms.len();
        let mut flat = Vec::with_capacity(m * m);
        for p in &perms {
            for q in &perms {
                let pq: Vec<usize> = (0..n).map(|i| p[q[i]]).collect();
                flat.push(index(&pq));
            }
        }
        let labels = perms.iter().map(|p| format!("{p:?}")).collect();
        Self::from_flat(m, flat, Some(labels))
    }

    /// Direct product; element `(x_1, .., x_r)` has index `Σ x_i·Π_{j>i}|G_j|`.
    pub fn direct_product(factors: &[Arc<FiniteGroup>]) -> Result<Self> {
        if factors.is_empty() {
            return Self::cyclic(1);
        }
        let n: usize = factors.iter().map(|g| g.order).product();
        let decode = |mut x: usize| {
            let mut parts = vec![0; factors.len()];
            for (i, g) in factors.iter().enumerate().rev() {
                parts[i] = x % g.order;
                x /= g.order;
            }
            parts
        };
        let encode = |parts: &[usize]| {
            parts.iter().zip(factors).fold(0, |acc, (&p, g)| acc * g.order + p)
        };
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            let pa = decode(a);
            for b in 0..n {
                let pb = decode(b);
                let prod: Vec<usize> =
                    factors.iter().enumerate().map(|(i, g)| g.mul(pa[i], pb[i])).collect();
                flat.push(encode(&prod));
            }
        }
        let labels = (0..n)
            .map(|x| {
                let parts: Vec<String> =
                    decode(x).iter().zip(factors).map(|(&p, g)| g.label(p)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Self::from_flat(n, flat, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Product of a sequence, left to right.
    pub fn mul_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// The table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// `g·k·g⁻¹`.
    pub fn conjugate(&self, k: usize, g: usize) -> usize {
        self.mul(self.mul(g, k), self.inverse[g])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Index of a permutation (one-line notation) in [`FiniteGroup::symmetric`].
pub fn symmetric_index(perm: &[usize]) -> Option<usize> {
    permutations(perm.len()).iter().position(|p| p == perm)
}

/// Convenience wrapper for [`FiniteGroup::cyclic`].
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    FiniteGroup::cyclic(n)
}

/// Convenience wrapper for [`FiniteGroup::symmetric`].
pub fn make_symmetric(n: usize) -> Result<FiniteGroup> {
    FiniteGroup::symmetric(n)
}

/// `g·k·g⁻¹` in `group`.
pub fn conjugate(group: &FiniteGroup, k: usize, g: usize) -> usize {
    group.conjugate(k, g)
}

/// A homomorphism, validated exhaustively on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(invalid(format!(
                "map has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&x) = map.iter().find(|&&x| x >= target.order()) {
            return Err(invalid(format!("image {x} is outside the target")));
        }
        if map[source.identity()] != target.identity() {
            return Err(invalid("identity is not mapped to identity"));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(invalid(format!("not multiplicative at ({a},{b})")));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = (0..group.order()).collect();
        GroupHom { source: group.clone(), target: group, map }
    }

    /// Projection of `direct_product(factors)` onto factor `i`.
    pub fn projection(product: Arc<FiniteGroup>, factors: &[Arc<FiniteGroup>], i: usize) -> Result<Self> {
        if i >= factors.len() {
            return Err(invalid(format!("factor {i} out of range")));
        }
        let tail: usize = factors[i + 1..].iter().map(|g| g.order()).product();
        let map = (0..product.order()).map(|x| (x / tail) % factors[i].order()).collect();
        GroupHom::new(product, factors[i].clone(), map)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order()).filter(|&x| self.map[x] == self.target.identity()).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        self.map.iter().for_each(|&x| hit[x] = true);
        hit.into_iter().all(|h| h)
    }
}

/// A unital set-theoretic section `q ↦ q̂` of a surjection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    surjection: GroupHom,
    lift: Vec<usize>,
}

impl Section {
    pub fn new(surjection: GroupHom, lift: Vec<usize>) -> Result<Self> {
        let q = surjection.target().clone();
        if lift.len() != q.order() {
            return Err(invalid(format!("lift has {} entries for a quotient of order {}", lift.len(), q.order())));
        }
        for (x, &g) in lift.iter().enumerate() {
            if g >= surjection.source().order() || surjection.apply(g) != x {
                return Err(invalid(format!("lift of {x} does not map back to {x}")));
            }
        }
        if lift[q.identity()] != surjection.source().identity() {
            return Err(invalid("section is not unital"));
        }
        Ok(Section { surjection, lift })
    }

    pub fn surjection(&self) -> &GroupHom {
        &self.surjection
    }

    #[inline]
    pub fn lift(&self, q: usize) -> usize {
        self.lift[q]
    }

    pub fn lifts(&self) -> &[usize] {
        &self.lift
    }
}

/// `K -> G -> Q` with a chosen section and the resulting `γ` table.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    g: Arc<FiniteGroup>,
    q: Arc<FiniteGroup>,
    rho: GroupHom,
    kernel_elems: Vec<usize>,
    kernel_group: Arc<FiniteGroup>,
    kernel_index: Vec<Option<usize>>,
    section: Section,
    gamma: Vec<usize>,
}

impl ExtensionData {
    /// Builds the extension determined by a section of a surjection.
    ///
    /// The kernel is renumbered `0..|K|` in increasing order of its
    /// `G`-indices and carries its own table; `γ` is stored as kernel indices.
    pub fn new(section: Section) -> Result<Self> {
        let rho = section.surjection().clone();
        if !rho.is_surjective() {
            return Err(invalid("homomorphism is not surjective"));
        }
        let g = rho.source().clone();
        let q = rho.target().clone();
        let kernel_elems = rho.kernel();
        let mut kernel_index = vec![None; g.order()];
        for (i, &k) in kernel_elems.iter().enumerate() {
            kernel_index[k] = Some(i);
        }
        for &k in &kernel_elems {
            for x in 0..g.order() {
                if kernel_index[g.conjugate(k, x)].is_none() {
                    return Err(precondition("kernel is not normal"));
                }
            }
        }
        let table = kernel_elems
            .iter()
            .map(|&a| kernel_elems.iter().map(|&b| kernel_index[g.mul(a, b)].unwrap()).collect())
            .collect();
        let labels = kernel_elems.iter().map(|&k| g.label(k)).collect();
        let kernel_group = Arc::new(FiniteGroup::from_table(table, Some(labels))?);
        let nq = q.order();
        let mut gamma = Vec::with_capacity(nq * nq);
        for a in 0..nq {
            for b in 0..nq {
                let lhs = g.mul(section.lift(a), section.lift(b));
                let k = g.mul(lhs, g.inv(section.lift(q.mul(a, b))));
                gamma.push(kernel_index[k].expect("q̂r̂(qr)^⁻¹ lies in the kernel"));
            }
        }
        Ok(ExtensionData { g, q, rho, kernel_elems, kernel_group, kernel_index, section, gamma })
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn q(&self) -> &Arc<FiniteGroup> {
        &self.q
    }

    pub fn rho(&self) -> &GroupHom {
        &self.rho
    }

    pub fn section(&self) -> &Section {
        &self.section
    }

    #[inline]
    pub fn lift(&self, q: usize) -> usize {
        self.section.lift(q)
    }

    /// `G`-indices of the kernel, sorted.
    pub fn kernel_elems(&self) -> &[usize] {
        &self.kernel_elems
    }

    pub fn kernel_group(&self) -> &Arc<FiniteGroup> {
        &self.kernel_group
    }

    /// Kernel index of a `G`-element, if it lies in `K`.
    pub fn kernel_index(&self, g: usize) -> Option<usize> {
        self.kernel_index[g]
    }

    /// The embedding `K -> G`.
    pub fn embedding(&self) -> GroupHom {
        GroupHom {
            source: self.kernel_group.clone(),
            target: self.g.clone(),
            map: self.kernel_elems.clone(),
        }
    }

    /// `γ(q,r)` as a kernel index.
    #[inline]
    pub fn gamma(&self, q: usize, r: usize) -> usize {
        self.gamma[q * self.q.order() + r]
    }

    /// `γ(q,r)` as a `G`-element.
    #[inline]
    pub fn gamma_in_g(&self, q: usize, r: usize) -> usize {
        self.kernel_elems[self.gamma(q, r)]
    }
}

/// The kernel element `k` with `q̂r̂ = k·(qr)^`, as a kernel index.
pub fn gamma_of(ext: &ExtensionData, q: usize, r: usize) -> usize {
    ext.gamma(q, r)
}

/// Central extension of `q` by `Z_n` classified by the 2-cocycle `sigma`.
///
/// `G` has elements `(a, x)` with index `a·|Q| + x` and product
/// `(a,x)(b,y) = (a + b + n·σ(x,y), xy)`. The section is `x ↦ (0, x)`.
pub fn central_extension(q: Arc<FiniteGroup>, n: u64, sigma: &Cochain) -> Result<ExtensionData> {
    if n == 0 {
        return Err(invalid("extension modulus must be positive"));
    }
    if sigma.degree() != 2 || **sigma.group() != *q {
        return Err(invalid("sigma must be a 2-cochain on the quotient"));
    }
    if !sigma.is_cocycle() {
        return Err(precondition("sigma is not a cocycle"));
    }
    let nq = q.order();
    let mut s = vec![0u64; nq * nq];
    for x in 0..nq {
        for y in 0..nq {
            s[x * nq + y] = sigma
                .value(&[x, y])
                .residue(n)
                .ok_or_else(|| precondition(format!("sigma({x},{y}) is not a multiple of 1/{n}")))?;
        }
    }
    let nn = n as usize;
    let order = nn * nq;
    let mut flat = Vec::with_capacity(order * order);
    for e1 in 0..order {
        let (a, x) = (e1 / nq, e1 % nq);
        for e2 in 0..order {
            let (b, y) = (e2 / nq, e2 % nq);
            let c = (a + b + s[x * nq + y] as usize) % nn;
            flat.push(c * nq + q.mul(x, y));
        }
    }
    let labels = (0..order).map(|e| format!("({},{})", e / nq, q.label(e % nq))).collect();
    let g = Arc::new(FiniteGroup::from_flat(order, flat, Some(labels))?);
    let rho = GroupHom::new(g.clone(), q.clone(), (0..order).map(|e| e % nq).collect())?;
    let section = Section::new(rho, (0..nq).collect())?;
    ExtensionData::new(section)
}
