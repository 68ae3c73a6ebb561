//! The cosimplicial objects used throughout: levels with their scalings and
//! ordered partitions, structure maps, realizations, and the decomposition of
//! the join summands of `ℛ(n)` into the simplices `σ_(r,s)`.

use crate::error::{check_cap, invalid, Error, Result};
use crate::scaled::{scale, Decoration, ScaledSet};
use crate::sset::{
    glue, nerve, ordered_complex, ordmap, standard, FinitePoset, Simplex, SimplexId, SimplicialMap, SimplicialSet,
};
use itertools::Itertools;
use std::collections::BTreeSet;

/// A level of a zoo object, with its ordered partition when it has one.
#[derive(Clone, Debug)]
pub struct Level {
    pub set: ScaledSet,
    pub partition: Option<(Vec<usize>, Vec<usize>)>,
}

pub(crate) fn bar_label(i: usize) -> String {
    format!("{i}\u{304}")
}

/// All vertex triples `a < b < c` of a vertex-determined set spanning a
/// nondegenerate 2-simplex.
fn triangles(x: &SimplicialSet) -> Vec<Vec<usize>> {
    x.ids(2).map(|id| x.verts_of(id).to_vec()).collect()
}

/// All 2-subsets `a < b < c` of a vertex range.
fn triples_in(lo: usize, hi: usize) -> Vec<[usize; 3]> {
    (lo..=hi).combinations(3).map(|v| [v[0], v[1], v[2]]).collect()
}

/// Cosimplicial objects whose levels are simplices: `Q(n) = Δⁿ⋆(Δⁿ)^op`,
/// `★(n) = Δⁿ⋆Δ⁰` and `⊞(n) = Δⁿ⋆(Δⁿ)^op⋆Δ⁰`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimplexObject {
    Q,
    Star,
    Boxtimes,
}

impl SimplexObject {
    /// Top vertex of level `n`.
    pub fn top(self, n: usize) -> usize {
        match self {
            SimplexObject::Q => 2 * n + 1,
            SimplexObject::Star => n + 1,
            SimplexObject::Boxtimes => 2 * n + 2,
        }
    }

    /// Vertex map of `F(θ)` for a monotone `θ : [m] → [k]`.
    pub fn fmap(self, theta: &[usize], k: usize) -> Vec<usize> {
        let m = theta.len() - 1;
        let mut out: Vec<usize> = theta.to_vec();
        if self != SimplexObject::Star {
            out.extend((0..=m).rev().map(|u| 2 * k + 1 - theta[u]));
        }
        match self {
            SimplexObject::Q => {}
            SimplexObject::Star => out.push(k + 1),
            SimplexObject::Boxtimes => out.push(2 * k + 2),
        }
        out
    }

    pub fn labels(self, n: usize) -> Vec<String> {
        let mut l: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        if self != SimplexObject::Star {
            l.extend((0..=n).rev().map(bar_label));
        }
        if self != SimplexObject::Q {
            l.push("v".into());
        }
        l
    }

    /// Thin nondegenerate triangles of level `n`, as vertex triples.
    pub fn thin(self, n: usize) -> BTreeSet<[usize; 3]> {
        let mut t: BTreeSet<[usize; 3]> = BTreeSet::new();
        match self {
            SimplexObject::Star => t.extend(triples_in(0, n)),
            SimplexObject::Q | SimplexObject::Boxtimes => {
                let top = 2 * n + 1;
                t.extend(triples_in(0, n));
                t.extend(triples_in(n + 1, top));
                for (i, j) in (0..=n).tuple_combinations() {
                    for k in j..=n {
                        t.insert([i, j, top - k]);
                        t.insert([k, top - j, top - i]);
                    }
                }
                if self == SimplexObject::Boxtimes {
                    let v = 2 * n + 2;
                    t.extend(triples_in(n + 1, v));
                    for j in 0..=n {
                        for i in 0..=j {
                            t.insert([j, top - i, v]);
                        }
                    }
                }
            }
        }
        t
    }

    pub fn partition(self, n: usize) -> (Vec<usize>, Vec<usize>) {
        ((0..=n).collect(), (n + 1..=self.top(n)).collect())
    }

    pub fn level(self, n: usize) -> Result<Level> {
        check_cap(n)?;
        let base = ordered_complex(self.labels(n), &[(0..=self.top(n)).collect()])?;
        let set = scale(&base, Decoration::Vertices(self.thin(n).iter().map(|t| t.to_vec()).collect()))?;
        Ok(Level { set, partition: Some(self.partition(n)) })
    }

    /// `F(θ) : F(m) → F(k)` as a simplicial map.
    pub fn map(self, theta: &[usize], k: usize) -> Result<SimplicialMap> {
        let m = theta.len() - 1;
        if !ordmap::is_monotone(theta) || theta.iter().any(|&t| t > k) {
            return invalid(format!("{theta:?} is not a monotone map into [{k}]"));
        }
        let src = self.level(m)?.set.base;
        let tgt = self.level(k)?.set.base;
        SimplicialMap::from_vertex_map(&src, &tgt, &self.fmap(theta, k))
    }
}

/// The duality `τₙ : i ↦ 2n+1−i` on `Q(n)`, as a map into the opposite of `Q(n)`.
pub fn tau(n: usize) -> Result<SimplicialMap> {
    let q = SimplexObject::Q.level(n)?.set.base;
    let qop = crate::sset::opposite(&q);
    // the opposite keeps ids, so a simplex with vertices v_0 < ⋯ < v_k of Q
    // is sent to the simplex of Q^op listing τ(v_k), …, τ(v_0) in Q
    let top = 2 * n + 1;
    let assign = (0..q.counts().len())
        .map(|d| {
            q.ids(d)
                .map(|id| {
                    let mut vs: Vec<usize> = q.verts_of(id).iter().map(|&v| top - v).collect();
                    vs.reverse();
                    Simplex::nondeg(q.lookup_id(&vs).unwrap())
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(q, qop, assign)
}

/// `Q(n)_◇`: the scaling of `Q(n)` with `{n−1,n,j̄}`, `{n−1,n̄,j̄}` and their
/// `τ`-duals added.
pub fn q_diamond_thin(n: usize) -> BTreeSet<[usize; 3]> {
    let mut t = SimplexObject::Q.thin(n);
    if n == 0 {
        return t;
    }
    let top = 2 * n + 1;
    let mut extra = Vec::new();
    for j in 0..=n {
        extra.push([n - 1, n, top - j]);
        if j < n {
            extra.push([n - 1, top - n, top - j]);
        }
    }
    for e in extra {
        t.insert(e);
        t.insert([top - e[2], top - e[1], top - e[0]]);
    }
    t
}

/// The subobjects of `Q(n)` governing the fibrancy of the twisted arrow
/// construction.
#[derive(Clone, Debug)]
pub struct FibSubobjects {
    pub n: usize,
    pub i: usize,
    /// `Q(n)`, or `Q(n)_◇` when `i = n`.
    pub q: ScaledSet,
    pub q_diamond: ScaledSet,
    pub k: BTreeSet<SimplexId>,
    pub kcal: BTreeSet<SimplexId>,
}

impl FibSubobjects {
    pub fn k_set(&self) -> Result<ScaledSet> {
        induced_sub(&self.q, &self.k)
    }

    pub fn kcal_set(&self) -> Result<ScaledSet> {
        induced_sub(&self.q, &self.kcal)
    }
}

/// A subcomplex given by ids with the induced scaling.
pub fn induced_sub(x: &ScaledSet, sub: &BTreeSet<SimplexId>) -> Result<ScaledSet> {
    let (s, back) = x.base.subcomplex(|id| sub.contains(&id))?;
    let thin = back.get(2).map_or(vec![], |l| {
        l.iter().enumerate().filter(|(_, old)| x.contains(old.idx)).map(|(k, _)| k).collect()
    });
    scale(&s, Decoration::Ids(thin))
}

/// `Kⁿᵢ`, `𝒦ⁿᵢ` and `Q(n)_◇` for `0 < i ≤ n`.
pub fn tw_fib_subobjects(n: usize, i: usize) -> Result<FibSubobjects> {
    if i == 0 || i > n {
        return invalid(format!("need 0 < i ≤ n, got n = {n}, i = {i}"));
    }
    check_cap(n)?;
    let top = 2 * n + 1;
    let base = SimplexObject::Q.level(n)?.set.base;
    let dia = scale(&base, Decoration::Vertices(q_diamond_thin(n).iter().map(|t| t.to_vec()).collect()))?;
    let q = if i == n { dia.clone() } else { SimplexObject::Q.level(n)?.set };
    let in_k = |vs: &[usize]| {
        vs.iter().all(|&v| v <= n)
            || vs.iter().all(|&v| v > n)
            || (0..=n).any(|j| j != i && !vs.contains(&j) && !vs.contains(&(top - j)))
    };
    let mut k = BTreeSet::new();
    let mut kcal = BTreeSet::new();
    for id in base.all_ids() {
        let vs = base.verts_of(id);
        if in_k(vs) {
            k.insert(id);
            kcal.insert(id);
        } else if !vs.contains(&0) || !vs.contains(&top) {
            kcal.insert(id);
        }
    }
    Ok(FibSubobjects { n, i, q, q_diamond: dia, k, kcal })
}

/// The poset `[n] × [1]`; `(ℓ, x)` has index `2ℓ + x`.
pub fn grid(n: usize) -> FinitePoset {
    FinitePoset::chain(n).product(&FinitePoset::chain(1))
}

/// `□(n) = Δⁿ × Δ¹` scaled by the triangles in `Δⁿ × {1}`. With `external`,
/// the triangles `(i,0) < (j,1) < (k,1)` are added as well.
pub fn square_level(n: usize, external: bool) -> Result<Level> {
    check_cap(n)?;
    let p = grid(n);
    let x = nerve(&p);
    let thin: Vec<Vec<usize>> = triangles(&x)
        .into_iter()
        .filter(|t| {
            let xs: Vec<usize> = t.iter().map(|v| v % 2).collect();
            xs == [1, 1, 1] || (external && xs == [0, 1, 1])
        })
        .collect();
    let set = scale(&x, Decoration::Vertices(thin))?;
    let j0 = (0..=n).map(|l| 2 * l).collect();
    let j1 = (0..=n).map(|l| 2 * l + 1).collect();
    Ok(Level { set, partition: Some((j0, j1)) })
}

/// The collapse `□(n) → ★(n)`: `(i,0) ↦ i`, `(i,1) ↦ n+1`.
pub fn collapse_map(n: usize) -> Result<SimplicialMap> {
    let sq = square_level(n, false)?.set.base;
    let star = SimplexObject::Star.level(n)?.set.base;
    let vmap: Vec<usize> = (0..2 * (n + 1)).map(|v| if v % 2 == 0 { v / 2 } else { n + 1 }).collect();
    SimplicialMap::from_vertex_map(&sq, &star, &vmap)
}

/// Element of a join summand `P ⋆ P^op` with `P = [n] × [1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummandElem {
    pub l: usize,
    /// 0 for `a`, 1 for `b`.
    pub x: usize,
    pub barred: bool,
}

/// `P ⋆ P^op` for `P = [n] × [1]`: unbarred `(ℓ,x)` has index `2ℓ+x`, barred
/// `2(n+1) + 2ℓ + x`.
pub fn summand_poset(n: usize) -> FinitePoset {
    let p = grid(n);
    let mut names: Vec<String> = (0..=n).flat_map(|l| [format!("{l}a"), format!("{l}b")]).collect();
    names.extend((0..=n).flat_map(|l| [format!("{}a", bar_label(l)), format!("{}b", bar_label(l))]));
    let m = 2 * (n + 1);
    let leq = (0..2 * m)
        .map(|u| {
            (0..2 * m)
                .map(|v| match (u < m, v < m) {
                    (true, true) => p.leq(u, v),
                    (true, false) => true,
                    (false, true) => false,
                    (false, false) => p.leq(v - m, u - m),
                })
                .collect()
        })
        .collect();
    FinitePoset::new(names, leq).expect("join of posets")
}

pub fn summand_elem(n: usize, idx: usize) -> SummandElem {
    let m = 2 * (n + 1);
    let (barred, r) = if idx < m { (false, idx) } else { (true, idx - m) };
    SummandElem { l: r / 2, x: r % 2, barred }
}

pub fn summand_index(n: usize, e: SummandElem) -> usize {
    2 * e.l + e.x + if e.barred { 2 * (n + 1) } else { 0 }
}

/// The thin rule of `ℛ(n)` on a triangle `u < v < w` of a join summand.
pub fn summand_triangle_thin(u: SummandElem, v: SummandElem, w: SummandElem) -> bool {
    let le = |p: SummandElem, q: SummandElem| p.l <= q.l && p.x <= q.x;
    let lt = |p: SummandElem, q: SummandElem| le(p, q) && p != q;
    match (u.barred, v.barred, w.barred) {
        (false, false, false) | (true, true, true) => return true,
        (false, false, true) => {
            if lt(u, v) && le(v, SummandElem { barred: false, ..w }) {
                return true;
            }
        }
        (false, true, true) => {
            let (y, z) = (SummandElem { barred: false, ..v }, SummandElem { barred: false, ..w });
            if lt(z, y) && le(y, u) {
                return true;
            }
        }
        _ => {}
    }
    // the six mixed families, with i ≤ j ≤ k
    let pat = |p: SummandElem, bp: bool, xp: usize| p.barred == bp && p.x == xp;
    let (a, b) = (0, 1);
    if pat(u, false, a) && pat(v, false, b) && pat(w, true, a) {
        return u.l <= v.l && v.l <= w.l;
    }
    if pat(u, false, a) && pat(v, true, b) && pat(w, true, a) {
        return w.l <= v.l && v.l <= u.l;
    }
    if pat(u, false, b) && pat(v, false, b) && pat(w, true, a) {
        return u.l <= v.l && v.l <= w.l;
    }
    if pat(u, false, a) && pat(v, true, b) && pat(w, true, b) {
        return w.l <= v.l && v.l <= u.l;
    }
    if pat(u, false, a) && pat(v, false, a) && pat(w, true, b) {
        return u.l <= v.l && v.l <= w.l;
    }
    if pat(u, false, b) && pat(v, true, a) && pat(w, true, a) {
        return w.l <= v.l && v.l <= u.l;
    }
    false
}

/// `Bⁿ = (Δⁿ×Δ¹) ⋆ (Δⁿ×Δ¹)^op` with the scaling induced from `ℛ(n)`.
pub fn b_level(n: usize) -> Result<ScaledSet> {
    check_cap(n)?;
    let p = summand_poset(n);
    let x = nerve(&p);
    let thin = triangles(&x)
        .into_iter()
        .filter(|t| summand_triangle_thin(summand_elem(n, t[0]), summand_elem(n, t[1]), summand_elem(n, t[2])))
        .collect();
    scale(&x, Decoration::Vertices(thin))
}

const EPS: [&str; 3] = ["ab", "aa", "bb"];

/// Index in `Rₙ` of `ℓ_ε` (`ε` = 0 for ab, 1 for aa, 2 for bb).
pub fn r_index(n: usize, l: usize, eps: usize, barred: bool) -> usize {
    3 * l + eps + if barred { 3 * (n + 1) } else { 0 }
}

/// Inverse of [`r_index`].
pub fn r_elem(n: usize, idx: usize) -> (usize, usize, bool) {
    let m = 3 * (n + 1);
    let (barred, r) = if idx < m { (false, idx) } else { (true, idx - m) };
    (r / 3, r % 3, barred)
}

/// Embedding of a summand element into `Rₙ`; summand 1 uses `b = aa`,
/// summand 2 uses `b = bb`, and `a` is `ab` in both.
pub fn summand_to_r(n: usize, summand: usize, e: SummandElem) -> usize {
    let eps = if e.x == 0 { 0 } else { summand };
    r_index(n, e.l, eps, e.barred)
}

/// The poset `Rₙ` whose nerve underlies `ℛ(n)`.
pub fn r_poset(n: usize) -> FinitePoset {
    let s = summand_poset(n);
    let m = 6 * (n + 1);
    let mut names = vec![String::new(); m];
    for idx in 0..m {
        let (l, e, barred) = r_elem(n, idx);
        let base = if barred { bar_label(l) } else { l.to_string() };
        names[idx] = format!("{base}{}", EPS[e]);
    }
    let mut leq = vec![vec![false; m]; m];
    for summand in 1..=2 {
        for u in 0..s.len() {
            for v in 0..s.len() {
                if s.leq(u, v) {
                    let (a, b) = (summand_to_r(n, summand, summand_elem(n, u)), summand_to_r(n, summand, summand_elem(n, v)));
                    leq[a][b] = true;
                }
            }
        }
    }
    FinitePoset::new(names, leq).expect("union of the two summands is a partial order")
}

/// Summand coordinates of an element of `Rₙ` with respect to a summand.
pub fn r_to_summand(n: usize, summand: usize, idx: usize) -> Option<SummandElem> {
    let (l, e, barred) = r_elem(n, idx);
    let x = match e {
        0 => 0,
        s if s == summand => 1,
        _ => return None,
    };
    Some(SummandElem { l, x, barred })
}

/// `ℛ(n)`: the nerve of `Rₙ` with the summand-wise thin rule, enlarged by
/// the images of thin triangles of `𝒯(n)` under `μₙ` and closed under the
/// bar involution and the exchange of the two summands.
pub fn r_level(n: usize) -> Result<ScaledSet> {
    check_cap(n)?;
    let x = nerve(&r_poset(n));
    let mut thin: BTreeSet<Vec<usize>> = triangles(&x)
        .into_iter()
        .filter(|t| {
            (1..=2).any(|s| {
                let c: Option<Vec<SummandElem>> = t.iter().map(|&v| r_to_summand(n, s, v)).collect();
                c.is_some_and(|c| summand_triangle_thin(c[0], c[1], c[2]))
            })
        })
        .collect();
    let t = t_level(n)?;
    for c in t.cells() {
        let mut img: Vec<usize> = t.base.verts_of(SimplexId::new(2, *c)).iter().map(|&v| mu_vertex(n, v)).collect();
        img.dedup();
        if img.len() == 3 {
            thin.insert(img);
        }
    }
    let swap = |v: usize| {
        let (l, e, b) = r_elem(n, v);
        r_index(n, l, [0, 2, 1][e], b)
    };
    for tri in thin.clone() {
        let mut barred: Vec<usize> = tri.iter().rev().map(|&v| r_bar(n, v)).collect();
        let swapped: Vec<usize> = tri.iter().map(|&v| swap(v)).collect();
        thin.insert(swapped.clone());
        thin.insert(barred.clone());
        barred = swapped.iter().rev().map(|&v| r_bar(n, v)).collect();
        thin.insert(barred);
    }
    scale(&x, Decoration::Vertices(thin.into_iter().collect()))
}

/// The bar involution on `Rₙ`.
pub fn r_bar(n: usize, idx: usize) -> usize {
    let (l, e, barred) = r_elem(n, idx);
    r_index(n, l, e, !barred)
}

/// `𝒯(n) = Q(n) × Δ¹` as the nerve of `[2n+1] × [1]`; `(t, x)` has index
/// `2t + x`. A triangle is thin when its image in `Q(n)` is thin or degenerate.
pub fn t_level(n: usize) -> Result<ScaledSet> {
    check_cap(n)?;
    let p = FinitePoset::chain(2 * n + 1).product(&FinitePoset::chain(1));
    let x = nerve(&p);
    let qthin = SimplexObject::Q.thin(n);
    let thin = triangles(&x)
        .into_iter()
        .filter(|t| {
            let pr: Vec<usize> = t.iter().map(|v| v / 2).collect();
            pr[0] == pr[1] || pr[1] == pr[2] || qthin.contains(&[pr[0], pr[1], pr[2]])
        })
        .collect();
    scale(&x, Decoration::Vertices(thin))
}

fn mu_vertex(n: usize, v: usize) -> usize {
    let top = 2 * n + 1;
    let (t, x) = (v / 2, v % 2);
    let (l, barred) = if t <= n { (t, false) } else { (top - t, true) };
    let eps = match (barred, x) {
        (false, 0) | (true, 1) => 0,
        (true, 0) => 1,
        _ => 2,
    };
    r_index(n, l, eps, barred)
}

/// `μₙ : 𝒯(n) → ℛ(n)`.
pub fn mu(n: usize) -> Result<SimplicialMap> {
    let vmap: Vec<usize> = (0..4 * (n + 1)).map(|v| mu_vertex(n, v)).collect();
    SimplicialMap::from_vertex_map(&t_level(n)?.base, &r_level(n)?.base, &vmap)
}

/// `ψₙ : ℛ(n) → 𝒯(n)`: `i_xy ↦ (i, x)`, `ī_xy ↦ (ī, y)`.
pub fn psi(n: usize) -> Result<SimplicialMap> {
    let top = 2 * n + 1;
    let m = 6 * (n + 1);
    let vmap: Vec<usize> = (0..m)
        .map(|idx| {
            let (l, e, barred) = r_elem(n, idx);
            let (x, y) = [(0, 1), (0, 0), (1, 1)][e];
            if barred { 2 * (top - l) + y } else { 2 * l + x }
        })
        .collect();
    SimplicialMap::from_vertex_map(&r_level(n)?.base, &t_level(n)?.base, &vmap)
}

/// First vertex with value 1 of `σ : Δⁿ → Δ¹`, or `n+1` when constant 0.
pub fn step_index(sigma: &[usize]) -> Result<usize> {
    if !ordmap::is_monotone(sigma) || sigma.iter().any(|&v| v > 1) {
        return Err(Error::Invalid(format!("{sigma:?} is not a monotone map into [1]")));
    }
    Ok(sigma.iter().position(|&v| v == 1).unwrap_or(sigma.len()))
}

/// `φ¹_σ`: `ℓ_aa ↦ ℓ_ab` for `ℓ < j`.
pub fn phi1(n: usize, sigma: &[usize]) -> Result<SimplicialMap> {
    if sigma.len() != n + 1 {
        return invalid("σ must have n+1 values");
    }
    let j = step_index(sigma)?;
    let vmap: Vec<usize> = (0..6 * (n + 1))
        .map(|idx| match r_elem(n, idx) {
            (l, 1, false) if l < j => r_index(n, l, 0, false),
            _ => idx,
        })
        .collect();
    let r = r_level(n)?.base;
    SimplicialMap::from_vertex_map(&r, &r, &vmap)
}

/// `φ²_σ`: every `ℓ_aa ↦ ℓ_ab`, and `ℓ̄_bb ↦ ℓ̄_ab` for `ℓ < j`.
pub fn phi2(n: usize, sigma: &[usize]) -> Result<SimplicialMap> {
    if sigma.len() != n + 1 {
        return invalid("σ must have n+1 values");
    }
    let j = step_index(sigma)?;
    let vmap: Vec<usize> = (0..6 * (n + 1))
        .map(|idx| match r_elem(n, idx) {
            (l, 1, false) => r_index(n, l, 0, false),
            (l, 2, true) if l < j => r_index(n, l, 0, true),
            _ => idx,
        })
        .collect();
    let r = r_level(n)?.base;
    SimplicialMap::from_vertex_map(&r, &r, &vmap)
}

/// Vertices of `σ_(r,s) : Δ^{2n+3} → Bⁿ` as summand indices.
pub fn sigma_rs(n: usize, r: usize, s: usize) -> Result<Vec<usize>> {
    if r > n || s > n {
        return invalid(format!("need r, s ≤ n, got ({r},{s})"));
    }
    let e = |l, x, barred| summand_index(n, SummandElem { l, x, barred });
    Ok((0..=2 * n + 3)
        .map(|p| {
            if p <= r {
                e(p, 0, false)
            } else if p <= n + 1 {
                e(p - 1, 1, false)
            } else if p <= 2 * n + 2 - s {
                e(2 * n + 2 - p, 1, true)
            } else {
                e(2 * n + 3 - p, 0, true)
            }
        })
        .collect())
}

/// Simplices of `Bⁿ` (as ids) in the union of the `σ_(r,s)` selected by `pick`.
pub fn b_union(n: usize, b: &SimplicialSet, pick: impl Fn(usize, usize) -> bool) -> Result<BTreeSet<SimplexId>> {
    let mut gens = Vec::new();
    for r in 0..=n {
        for s in 0..=n {
            if pick(r, s) {
                let vs = sigma_rs(n, r, s)?;
                gens.push(b.lookup_id(&vs).ok_or_else(|| Error::Invalid("σ_(r,s) is not a simplex".into()))?);
            }
        }
    }
    Ok(b.closure(&gens))
}

/// `B⁺`, `B⁻` or `B⁰`: unions over `r − s ≥ 0`, `≤ 0` or `= 0`.
pub fn b_region(n: usize, b: &SimplicialSet, sign: std::cmp::Ordering) -> Result<BTreeSet<SimplexId>> {
    use std::cmp::Ordering::*;
    b_union(n, b, |r, s| match sign {
        Greater => r >= s,
        Less => r <= s,
        Equal => r == s,
    })
}

/// `Aⁿ ⊂ Bⁿ`: simplices inside `c ⋆ c^op` for a chain `c` of `Δⁿ × Δ¹`.
pub fn a_sub(n: usize, b: &SimplicialSet) -> BTreeSet<SimplexId> {
    let p = grid(n);
    b.all_ids()
        .into_iter()
        .filter(|id| {
            let mut under: Vec<usize> = b
                .verts_of(*id)
                .iter()
                .map(|&v| {
                    let e = summand_elem(n, v);
                    2 * e.l + e.x
                })
                .collect();
            under.sort_unstable();
            under.dedup();
            under.iter().tuple_combinations().all(|(&u, &v)| p.comparable(u, v))
        })
        .collect()
}

/// `W_(r,s) = d_r σ ∪ d_{2n+2−s} σ` as a set of simplex ids.
pub fn w_subcomplex(n: usize, b: &SimplicialSet, r: usize, s: usize) -> Result<BTreeSet<SimplexId>> {
    let vs = sigma_rs(n, r, s)?;
    let face = |k: usize| {
        let mut f = vs.clone();
        f.remove(k);
        b.lookup_id(&f).unwrap()
    };
    Ok(b.closure(&[face(r), face(2 * n + 2 - s)]))
}

/// Preimage of a subcomplex of `B` along the simplex with vertex list `vs`,
/// as a set of vertex subsets of `[vs.len() − 1]`.
pub fn preimage(b: &SimplicialSet, vs: &[usize], sub: &BTreeSet<SimplexId>) -> BTreeSet<Vec<usize>> {
    let m = vs.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1u32 << m) {
        let pos: Vec<usize> = (0..m).filter(|p| mask >> p & 1 == 1).collect();
        let img: Vec<usize> = pos.iter().map(|&p| vs[p]).collect();
        if b.lookup_id(&img).is_some_and(|id| sub.contains(&id)) {
            out.insert(pos);
        }
    }
    out
}

/// Level `n` of a named zoo object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZooName {
    Q,
    Star,
    Boxtimes,
    Square,
    R,
    T,
    Qcal,
    K,
    Kcal,
    QDiamond,
}

impl ZooName {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "q" => ZooName::Q,
            "star" => ZooName::Star,
            "boxtimes" => ZooName::Boxtimes,
            "square" => ZooName::Square,
            "r" => ZooName::R,
            "t" => ZooName::T,
            "qcal" => ZooName::Qcal,
            "k" => ZooName::K,
            "kcal" => ZooName::Kcal,
            "qdiamond" => ZooName::QDiamond,
            _ => return invalid(format!("unknown zoo object {s}")),
        })
    }

    pub fn all() -> [ZooName; 10] {
        use ZooName::*;
        [Q, Star, Boxtimes, Square, R, T, Qcal, K, Kcal, QDiamond]
    }
}

/// `𝒬(n) ⊂ ℛ(n)`: the image of `ξₙ`, i.e. the two copies of `Aⁿ` glued along
/// `Q(n)`, with the scaling induced from `ℛ(n)`.
pub fn qcal_sub(n: usize, r: &SimplicialSet) -> BTreeSet<SimplexId> {
    let p = grid(n);
    r.all_ids()
        .into_iter()
        .filter(|id| {
            let vs = r.verts_of(*id);
            (1..=2).any(|s| {
                let c: Option<Vec<SummandElem>> = vs.iter().map(|&v| r_to_summand(n, s, v)).collect();
                c.is_some_and(|c| {
                    let mut under: Vec<usize> = c.iter().map(|e| 2 * e.l + e.x).collect();
                    under.sort_unstable();
                    under.dedup();
                    under.iter().tuple_combinations().all(|(&u, &v)| p.comparable(u, v))
                })
            })
        })
        .collect()
}

/// Build level `n` of a zoo object. `i` parametrises `K`, `𝒦` (default `n`).
pub fn zoo_level(name: ZooName, n: usize, i: Option<usize>) -> Result<Level> {
    match name {
        ZooName::Q => SimplexObject::Q.level(n),
        ZooName::Star => SimplexObject::Star.level(n),
        ZooName::Boxtimes => SimplexObject::Boxtimes.level(n),
        ZooName::Square => square_level(n, false),
        ZooName::R => Ok(Level { set: r_level(n)?, partition: None }),
        ZooName::T => Ok(Level { set: t_level(n)?, partition: None }),
        ZooName::Qcal => {
            let r = r_level(n)?;
            let sub = qcal_sub(n, &r.base);
            Ok(Level { set: induced_sub(&r, &sub)?, partition: None })
        }
        ZooName::K | ZooName::Kcal | ZooName::QDiamond => {
            let f = tw_fib_subobjects(n, i.unwrap_or(n))?;
            let set = match name {
                ZooName::K => f.k_set()?,
                ZooName::Kcal => f.kcal_set()?,
                _ => f.q_diamond.clone(),
            };
            Ok(Level { set, partition: None })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureMap {
    Coface(usize),
    Codegeneracy(usize),
}

/// A coface `d^i : F(n−1) → F(n)` or codegeneracy `s^i : F(n+1) → F(n)`.
pub fn zoo_map(name: ZooName, n: usize, kind: StructureMap) -> Result<SimplicialMap> {
    let (theta, m, k) = match kind {
        StructureMap::Coface(i) => {
            if n == 0 || i > n {
                return invalid(format!("coface d^{i} into level {n} does not exist"));
            }
            (ordmap::coface(n, i), n - 1, n)
        }
        StructureMap::Codegeneracy(i) => {
            if i > n {
                return invalid(format!("codegeneracy s^{i} onto level {n} does not exist"));
            }
            (ordmap::codegeneracy(n, i), n + 1, n)
        }
    };
    structure_map(name, &theta, m, k)
}

/// `F(θ)` for a monotone `θ : [m] → [k]`.
pub fn structure_map(name: ZooName, theta: &[usize], m: usize, k: usize) -> Result<SimplicialMap> {
    debug_assert_eq!(theta.len(), m + 1);
    match name {
        ZooName::Q => SimplexObject::Q.map(theta, k),
        ZooName::Star => SimplexObject::Star.map(theta, k),
        ZooName::Boxtimes => SimplexObject::Boxtimes.map(theta, k),
        ZooName::Square => {
            let vmap: Vec<usize> = (0..2 * (m + 1)).map(|v| 2 * theta[v / 2] + v % 2).collect();
            SimplicialMap::from_vertex_map(&square_level(m, false)?.set.base, &square_level(k, false)?.set.base, &vmap)
        }
        ZooName::T => {
            let q = SimplexObject::Q.fmap(theta, k);
            let vmap: Vec<usize> = (0..2 * (2 * m + 2)).map(|v| 2 * q[v / 2] + v % 2).collect();
            SimplicialMap::from_vertex_map(&t_level(m)?.base, &t_level(k)?.base, &vmap)
        }
        ZooName::R | ZooName::Qcal => {
            let vmap: Vec<usize> = (0..6 * (m + 1))
                .map(|idx| {
                    let (l, e, b) = r_elem(m, idx);
                    r_index(k, theta[l], e, b)
                })
                .collect();
            let src = zoo_level(name, m, None)?.set.base;
            let tgt = zoo_level(name, k, None)?.set.base;
            if name == ZooName::R {
                SimplicialMap::from_vertex_map(&src, &tgt, &vmap)
            } else {
                // 𝒬 levels are subcomplexes of ℛ levels, relabelled by the
                // subcomplex construction; go through vertex labels
                let rk = r_level(k)?.base;
                let by_label: Vec<usize> = src
                    .labels()
                    .iter()
                    .map(|l| {
                        let old = r_level(m).unwrap().base.labels().iter().position(|x| x == l).unwrap();
                        let img = rk.label(vmap[old]).to_string();
                        tgt.labels().iter().position(|x| *x == img).unwrap()
                    })
                    .collect();
                SimplicialMap::from_vertex_map(&src, &tgt, &by_label)
            }
        }
        ZooName::K | ZooName::Kcal | ZooName::QDiamond => {
            Err(Error::Unsupported(format!("{name:?} is not a cosimplicial object")))
        }
    }
}

/// Left Kan extension of a simplex-level cosimplicial object along the
/// Yoneda embedding, evaluated on `X`. Also returns, for each nondegenerate
/// simplex `x` of `X`, the canonical map `F(dim x) → F(X)`.
pub fn realize(f: SimplexObject, x: &SimplicialSet) -> Result<(ScaledSet, Vec<Vec<SimplicialMap>>)> {
    let mut p = SimplicialSet::empty();
    let mut maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for d in 0..x.counts().len() {
        check_cap(d)?;
        let level = f.level(d)?.set.base;
        let mut level_maps = Vec::new();
        for id in x.ids(d) {
            // boundary attachment: a simplex of F(d) lying in the image of
            // F(δ_j) is attached through the j-th face of x
            let faces: Vec<(Vec<usize>, SimplicialMap)> = if d == 0 {
                vec![]
            } else {
                (0..=d)
                    .map(|j| {
                        let fj = &x.faces_of(id)[j];
                        let eta = fj.surjection();
                        let theta = ordmap::coface(d, j);
                        let inc = f.fmap(&theta, d);
                        let via = f.map(&eta, fj.base.dim).and_then(|e| e.then(&maps[fj.base.dim][fj.base.idx]));
                        via.map(|m| (inc, m))
                    })
                    .collect::<Result<_>>()?
            };
            let attach = |sid: SimplexId| -> Option<Simplex> {
                let vs = level.verts_of(sid);
                for (inc, m) in &faces {
                    let pos: Option<Vec<usize>> = vs.iter().map(|v| inc.iter().position(|u| u == v)).collect();
                    if let Some(pos) = pos {
                        let src = m.source();
                        let w = src.lookup(&pos)?;
                        return Some(m.apply(&w));
                    }
                }
                None
            };
            let (np, phi, incl) = glue(&level, attach, &p);
            for l in maps.iter_mut() {
                for m in l.iter_mut() {
                    *m = m.then(&incl)?;
                }
            }
            for m in level_maps.iter_mut() {
                *m = SimplicialMap::then(m, &incl)?;
            }
            level_maps.push(phi);
            p = np;
        }
        maps.push(level_maps);
    }
    let mut thin = BTreeSet::new();
    for (d, l) in maps.iter().enumerate() {
        let tri = f.thin(d);
        for m in l {
            for t in &tri {
                let img = m.apply(&m.source().lookup(t).unwrap());
                if !img.is_degenerate() {
                    thin.insert(img.base.idx);
                }
            }
        }
    }
    let set = scale(&p, Decoration::Ids(thin.into_iter().collect()))?;
    Ok((set, maps))
}

/// `Δⁿ` as a level-compatible standard simplex, for realization tests.
pub fn simplex(n: usize) -> SimplicialSet {
    standard(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{isomorphic, simplex_family, SimplexKind};

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            0
        } else {
            (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
        }
    }

    #[test]
    fn q_levels() {
        assert_eq!(SimplexObject::Q.level(0).unwrap().set.count(), 0);
        let q1 = SimplexObject::Q.thin(1);
        assert_eq!(q1.into_iter().collect::<Vec<_>>(), vec![[0, 1, 2], [1, 2, 3]]);
        assert_eq!(SimplexObject::Q.level(2).unwrap().set.count(), 10);
        for n in 0..=4 {
            let c = SimplexObject::Q.thin(n).len();
            assert_eq!(c, 2 * binom(n + 1, 3) + 2 * binom(n + 2, 3));
        }
    }

    #[test]
    fn compendium_levels() {
        assert_eq!(SimplexObject::Star.level(1).unwrap().set.count(), 0);
        let b1: Vec<[usize; 3]> = SimplexObject::Boxtimes.thin(1).into_iter().collect();
        let mut want = vec![[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [1, 3, 4], [1, 2, 4]];
        want.sort();
        assert_eq!(b1, want);
        assert!(SimplexObject::Boxtimes.thin(0).contains(&[0, 1, 2]));
    }

    #[test]
    fn tau_examples() {
        let t = tau(1).unwrap();
        assert_eq!(t.vertex_map(), vec![3, 2, 1, 0]);
        t.validate().unwrap();
    }

    #[test]
    fn diamond_at_one() {
        let d: Vec<[usize; 3]> = q_diamond_thin(1).into_iter().collect();
        assert_eq!(d, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
    }

    #[test]
    fn k_one_one() {
        let f = tw_fib_subobjects(1, 1).unwrap();
        let q = &f.q.base;
        let edges: Vec<Vec<usize>> = f.k.iter().filter(|id| id.dim == 1).map(|id| q.verts_of(*id).to_vec()).collect();
        // j = 0 is allowed, so the edge {1, 2} missing 0 and 0̄ = 3 is present
        assert_eq!(edges, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        let tris: Vec<Vec<usize>> =
            f.kcal.iter().filter(|id| id.dim == 2).map(|id| q.verts_of(*id).to_vec()).collect();
        assert_eq!(tris, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(tw_fib_subobjects(1, 0).is_err());
    }

    #[test]
    fn q_coface_and_codegeneracy() {
        let d0 = zoo_map(ZooName::Q, 1, StructureMap::Coface(0)).unwrap();
        assert_eq!(d0.vertex_map(), vec![1, 2]);
        let s0 = zoo_map(ZooName::Q, 0, StructureMap::Codegeneracy(0)).unwrap();
        assert_eq!(s0.vertex_map(), vec![0, 0, 1, 1]);
    }

    #[test]
    fn r_poset_shape() {
        assert_eq!(r_poset(0).len(), 6);
        assert_eq!(r_poset(1).len(), 12);
        let p = r_poset(0);
        let i = |s: &str| p.index_of(s).unwrap();
        assert!(p.lt(i("0ab"), i("0aa")));
        assert!(p.lt(i("0ab"), i("0bb")));
        assert!(p.lt(i("0aa"), i("0\u{304}aa")));
        assert!(p.lt(i("0\u{304}aa"), i("0\u{304}ab")));
        assert!(!p.comparable(i("0aa"), i("0bb")));
        assert_eq!(nerve(&p).count(0), 6);
    }

    #[test]
    fn psi_after_mu_is_identity() {
        for n in 0..=2 {
            let c = mu(n).unwrap().then(&psi(n).unwrap()).unwrap();
            assert!(c.same_as(&SimplicialMap::identity(&t_level(n).unwrap().base)));
        }
    }

    #[test]
    fn realize_q_on_simplices_and_points() {
        let (q2, _) = realize(SimplexObject::Q, &standard(2)).unwrap();
        let direct = SimplexObject::Q.level(2).unwrap().set;
        let iso = isomorphic(&q2.base, &direct.base).unwrap();
        assert!(q2.preserved_by(&iso, &direct));
        let b = simplex_family(SimplexKind::Boundary, 1, None).unwrap();
        let (qb, _) = realize(SimplexObject::Q, &b).unwrap();
        assert_eq!(qb.base.counts(), vec![4, 2]);
    }

    #[test]
    fn sigma_examples() {
        // σ_(3,2) at n = 3
        let vs = sigma_rs(3, 3, 2).unwrap();
        let names: Vec<String> = vs.iter().map(|&v| summand_poset(3).name(v).to_string()).collect();
        let want = ["0a", "1a", "2a", "3a", "3b", "3̄b", "2̄b", "2̄a", "1̄a", "0̄a"];
        assert_eq!(names, want);
    }

    #[test]
    fn decomposition_identities() {
        use std::cmp::Ordering::*;
        for n in 0..=2 {
            let b = b_level(n).unwrap().base;
            let all: BTreeSet<SimplexId> = b.all_ids().into_iter().collect();
            assert_eq!(b_union(n, &b, |_, _| true).unwrap(), all);
            let (plus, minus, zero) =
                (b_region(n, &b, Greater).unwrap(), b_region(n, &b, Less).unwrap(), b_region(n, &b, Equal).unwrap());
            assert_eq!(plus.intersection(&minus).copied().collect::<BTreeSet<_>>(), zero);
            assert_eq!(a_sub(n, &b), zero);
            for (r, s) in (0..=n).cartesian_product(0..=n).filter(|(r, s)| r > s) {
                let stage = b_union(n, &b, |u, v| u >= v && u - v < r - s).unwrap();
                let pre = preimage(&b, &sigma_rs(n, r, s).unwrap(), &stage);
                let w = w_subcomplex(n, &b, r, s).unwrap();
                let want = preimage(&b, &sigma_rs(n, r, s).unwrap(), &w);
                assert_eq!(pre, want, "n={n} r={r} s={s}");
            }
        }
    }

    #[test]
    fn scaled_maps() {
        for n in 0..=2 {
            let r = r_level(n).unwrap();
            let ropp = crate::sset::opposite(&r.base);
            let bar: Vec<usize> = (0..6 * (n + 1)).map(|v| r_bar(n, v)).collect();
            let f = SimplicialMap::from_vertex_map(&r.base, &ropp, &bar).unwrap();
            assert!(f.is_isomorphism());
            assert!(r.preserved_by(&f, &r.dual()));
            let t = t_level(n).unwrap();
            assert!(t.preserved_by(&mu(n).unwrap(), &r));
            assert!(r.preserved_by(&psi(n).unwrap(), &t));
        }
        for n in 0..=1 {
            let r = r_level(n).unwrap();
            for sigma in ordmap::monotone_maps(n, 1) {
                assert!(r.preserved_by(&phi1(n, &sigma).unwrap(), &r), "φ¹ {sigma:?}");
                assert!(r.preserved_by(&phi2(n, &sigma).unwrap(), &r), "φ² {sigma:?}");
            }
        }
    }

    #[test]
    fn q_is_tau_invariant() {
        for n in 0..=4 {
            let q = SimplexObject::Q.level(n).unwrap().set;
            assert!(q.preserved_by(&tau(n).unwrap(), &q.dual()));
        }
    }
}
