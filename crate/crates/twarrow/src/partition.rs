//! Ordered partitions of finite posets, the chain posets `P_𝒥` with their
//! truncation congruences, mapping spaces of the collapsed nerves, an
//! independent necklace computation of the same mapping spaces, and the
//! explicit poset maps between chain posets of the zoo objects.

use crate::error::{invalid, Error, Result};
use crate::sset::{
    collapse_named, nerve, quotient_by, FinitePoset, Simplex, SimplexId, SimplicialMap, SimplicialSet,
};
use crate::zoo::{grid, square_level, SimplexObject};
use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

/// A pair `(J₀, J₁)` covering `J` with nothing in `J₁` strictly below
/// anything in `J₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartition {
    pub poset: FinitePoset,
    in_j1: Vec<bool>,
}

pub fn make_partition(poset: &FinitePoset, j0: &[usize], j1: &[usize]) -> Result<OrderedPartition> {
    let n = poset.len();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for (&x, one) in j0.iter().map(|x| (x, false)).chain(j1.iter().map(|y| (y, true))) {
        if x >= n {
            return invalid(format!("element {x} is not in the poset"));
        }
        if side[x].is_some_and(|s| s != one) {
            return invalid(format!("overlap: {} lies in both J₀ and J₁", poset.name(x)));
        }
        side[x] = Some(one);
    }
    if let Some(x) = side.iter().position(|s| s.is_none()) {
        return invalid(format!("non-cover: {} lies in neither J₀ nor J₁", poset.name(x)));
    }
    let in_j1: Vec<bool> = side.into_iter().map(|s| s.unwrap()).collect();
    for x in (0..n).filter(|&x| !in_j1[x]) {
        for y in (0..n).filter(|&y| in_j1[y]) {
            if poset.lt(y, x) {
                return invalid(format!(
                    "order violation: {} ∈ J₁ lies below {} ∈ J₀",
                    poset.name(y),
                    poset.name(x)
                ));
            }
        }
    }
    Ok(OrderedPartition { poset: poset.clone(), in_j1 })
}

impl OrderedPartition {
    pub fn j0(&self) -> Vec<usize> {
        (0..self.in_j1.len()).filter(|&x| !self.in_j1[x]).collect()
    }

    pub fn j1(&self) -> Vec<usize> {
        (0..self.in_j1.len()).filter(|&x| self.in_j1[x]).collect()
    }

    pub fn in_j0(&self, x: usize) -> bool {
        !self.in_j1[x]
    }

    pub fn in_j1(&self, x: usize) -> bool {
        self.in_j1[x]
    }

    /// Swap the halves over the opposite poset.
    pub fn opposite(&self) -> OrderedPartition {
        OrderedPartition { poset: self.poset.opposite(), in_j1: self.in_j1.iter().map(|b| !b).collect() }
    }

    /// The partition a zoo level carries.
    pub fn of_level(obj: SimplexObject, n: usize) -> Result<OrderedPartition> {
        let (j0, j1) = obj.partition(n);
        make_partition(&FinitePoset::chain(obj.top(n)), &j0, &j1)
    }

    /// `□(n) = [n] × [1]` split by the second coordinate.
    pub fn of_square(n: usize) -> Result<OrderedPartition> {
        let j0: Vec<usize> = (0..=n).map(|l| 2 * l).collect();
        let j1: Vec<usize> = (0..=n).map(|l| 2 * l + 1).collect();
        make_partition(&grid(n), &j0, &j1)
    }

    /// Sort a chain of `J` bottom-up.
    fn sort_chain(&self, s: &mut [usize]) {
        s.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.poset.lt(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
    }
}

/// A collapsed nerve with the quotient map from `N(J)`.
#[derive(Clone, Debug)]
pub struct Collapsed {
    pub set: SimplicialSet,
    pub map: SimplicialMap,
}

impl Collapsed {
    /// Vertex of the quotient hit by the element `x`.
    pub fn vertex_of(&self, x: usize) -> usize {
        self.map.image(SimplexId::new(0, x)).base.idx
    }
}

fn nerve_of(nj: &SimplicialSet, elems: &[usize]) -> BTreeSet<SimplexId> {
    let keep: BTreeSet<usize> = elems.iter().copied().collect();
    nj.all_ids().into_iter().filter(|&id| nj.verts_of(id).iter().all(|v| keep.contains(v))).collect()
}

/// `𝒥^R` (one point `∗₁`, vertex 0) and `𝒥̃` (points `∗₀`, `∗₁`, vertices 0
/// and 1).
pub fn quotients(part: &OrderedPartition) -> Result<(Collapsed, Collapsed)> {
    let nj = nerve(&part.poset);
    let n0 = nerve_of(&nj, &part.j0());
    let n1 = nerve_of(&nj, &part.j1());
    let (r, rm) = collapse_named(&nj, std::slice::from_ref(&n1), &["*1".to_string()])?;
    let (t, tm) = collapse_named(&nj, &[n0, n1], &["*0".to_string(), "*1".to_string()])?;
    Ok((Collapsed { set: r, map: rm }, Collapsed { set: t, map: tm }))
}

/// Which truncation to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    R,
    L,
    A,
}

/// Truncate a weak inclusion chain `S₀ ⊆ ⋯ ⊆ S_k` of objects of `P_𝒥`, each
/// listed bottom-up.
pub fn truncate(part: &OrderedPartition, chain: &[Vec<usize>], side: Side) -> Vec<Vec<usize>> {
    let s0 = &chain[0];
    let r = s0.iter().copied().find(|&x| part.in_j1(x));
    let l = s0.iter().rev().copied().find(|&x| part.in_j0(x));
    let p = &part.poset;
    chain
        .iter()
        .map(|s| {
            s.iter()
                .copied()
                .filter(|&x| {
                    let right = side == Side::L || r.is_none_or(|r| p.leq(x, r));
                    let left = side == Side::R || l.is_none_or(|l| p.leq(l, x));
                    right && left
                })
                .collect()
        })
        .collect()
}

/// Objects of `P_𝒥`, or of a full subposet of it, with the nerve.
#[derive(Clone, Debug)]
pub struct ChainPoset {
    pub partition: OrderedPartition,
    pub objects: Vec<Vec<usize>>,
    pub poset: FinitePoset,
    nerve: OnceLock<SimplicialSet>,
    index: HashMap<Vec<usize>, usize>,
}

fn set_name(p: &FinitePoset, s: &[usize]) -> String {
    let names: Vec<&str> = s.iter().map(|&x| p.name(x)).collect();
    format!("{{{}}}", names.join(","))
}

impl ChainPoset {
    /// `P_𝒥`: chains with minimum in `J₀` and maximum in `J₁`.
    pub fn new(part: &OrderedPartition) -> Self {
        let objects: Vec<Vec<usize>> = part
            .poset
            .chains()
            .into_iter()
            .filter(|c| part.in_j0(c[0]) && part.in_j1(*c.last().unwrap()))
            .collect();
        Self::from_objects(part, objects)
    }

    fn from_objects(part: &OrderedPartition, objects: Vec<Vec<usize>>) -> Self {
        let names = objects.iter().map(|s| set_name(&part.poset, s)).collect();
        let sets: Vec<BTreeSet<usize>> = objects.iter().map(|s| s.iter().copied().collect()).collect();
        let leq = sets.iter().map(|a| sets.iter().map(|b| a.is_subset(b)).collect()).collect();
        let poset = FinitePoset::new(names, leq).expect("inclusion is a partial order");
        let index = objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        ChainPoset { partition: part.clone(), objects, poset, nerve: OnceLock::new(), index }
    }

    pub fn nerve(&self) -> &SimplicialSet {
        self.nerve.get_or_init(|| nerve(&self.poset))
    }

    /// The full subposet on objects passing `keep`.
    pub fn restrict(&self, keep: impl Fn(&[usize]) -> bool) -> Self {
        let objects = self.objects.iter().filter(|s| keep(s)).cloned().collect();
        Self::from_objects(&self.partition, objects)
    }

    /// `P^j`: objects with minimum `j`.
    pub fn with_min(&self, j: usize) -> Self {
        self.restrict(|s| s[0] == j)
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Object index of a set given in any order.
    pub fn find(&self, s: &[usize]) -> Option<usize> {
        let mut v = s.to_vec();
        self.partition.sort_chain(&mut v);
        self.index_of(&v)
    }

    fn sets(&self, chain: &[usize]) -> Vec<Vec<usize>> {
        chain.iter().map(|&i| self.objects[i].clone()).collect()
    }

    /// Truncation of a chain of object indices, as sets of `J`.
    pub fn truncate_sets(&self, chain: &[usize], side: Side) -> Vec<Vec<usize>> {
        truncate(&self.partition, &self.sets(chain), side)
    }

    /// Truncation as object indices, when every truncated set is an object
    /// here.
    pub fn truncate(&self, chain: &[usize], side: Side) -> Option<Vec<usize>> {
        self.truncate_sets(chain, side).iter().map(|s| self.index_of(s)).collect()
    }

    /// Weak chains of objects with `len` entries.
    pub fn weak_chains(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        fn go(p: &FinitePoset, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for b in 0..p.len() {
                if cur.last().is_none_or(|&a| p.leq(a, b)) {
                    cur.push(b);
                    go(p, len, cur, out);
                    cur.pop();
                }
            }
        }
        if len > 0 {
            go(&self.poset, len, &mut cur, &mut out);
        }
        out
    }

    /// Quotient of the nerve by equality of truncations. Fails when the
    /// truncation leaves this subposet or is not a congruence.
    pub fn congruence_classes(&self, side: Side) -> Result<(SimplicialSet, SimplicialMap)> {
        let nv = self.nerve();
        for id in nv.all_ids() {
            if self.truncate(nv.verts_of(id), side).is_none() {
                return Err(Error::NotCongruence(format!(
                    "truncation of {} leaves the poset",
                    nv.describe(&Simplex::nondeg(id))
                )));
            }
        }
        quotient_by(nv, |s| {
            let t = self.truncate(&nv.vertices(s), side).expect("checked above");
            nv.lookup(&t).expect("nerve of a poset is vertex-determined")
        })
    }

    /// Closure of the truncation congruence under faces and degeneracies,
    /// checked on weak chains with at most `max_len` entries.
    pub fn check_congruence(&self, side: Side, max_len: usize) -> Result<()> {
        let tr = |c: &[usize]| self.truncate_sets(c, side);
        for len in 1..=max_len {
            for c in self.weak_chains(len) {
                let t = tr(&c);
                let back: Option<Vec<usize>> = t.iter().map(|s| self.index_of(s)).collect();
                let Some(back) = back else {
                    return Err(Error::NotCongruence(format!("truncation of {c:?} leaves the poset")));
                };
                if tr(&back) != t {
                    return Err(Error::NotCongruence(format!("truncation is not idempotent at {c:?}")));
                }
                for i in 0..len {
                    let mut dc = c.clone();
                    dc.insert(i, c[i]);
                    let mut db = back.clone();
                    db.insert(i, back[i]);
                    if tr(&dc) != tr(&db) {
                        return Err(Error::NotCongruence(format!("s{i} breaks the relation at {c:?}")));
                    }
                    if len > 1 {
                        let mut fc = c.clone();
                        fc.remove(i);
                        let mut fb = back.clone();
                        fb.remove(i);
                        if tr(&fc) != tr(&fb) {
                            return Err(Error::NotCongruence(format!("d{i} breaks the relation at {c:?}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Marked edges `S ⊂ S'` in the sense of the scaled rigidification: every
    /// added element spans a thin triangle with its neighbours in `S`. With a side, the edge is read in the quotient: an
    /// edge class is marked when its truncation is degenerate or marked.
    pub fn is_marked(&self, a: usize, b: usize, thin: &dyn Fn(usize, usize, usize) -> bool, side: Option<Side>) -> bool {
        let p = &self.partition.poset;
        match side {
            None => marked_step(p, &self.objects[a], &self.objects[b], thin),
            Some(side) => {
                let t = self.truncate_sets(&[a, b], side);
                t[0] == t[1] || marked_step(p, &t[0], &t[1], thin)
            }
        }
    }
}

fn marked_step(p: &FinitePoset, s: &[usize], t: &[usize], thin: &dyn Fn(usize, usize, usize) -> bool) -> bool {
    t.iter().filter(|k| !s.contains(k)).all(|&k| {
        let lo = s.iter().rev().copied().find(|&a| p.lt(a, k));
        let hi = s.iter().copied().find(|&b| p.lt(k, b));
        matches!((lo, hi), (Some(a), Some(b)) if thin(a, k, b))
    })
}

/// Which mapping space of the collapsed nerve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapMode {
    /// `𝔠[𝒥^R](j, ∗₁)`.
    Right(usize),
    /// `𝔠[𝒥̃](∗₀, ∗₁)`.
    TwoSided,
}

/// The mapping space as a quotient of a chain-poset nerve.
pub fn mapping_space(part: &OrderedPartition, mode: MapMode) -> Result<SimplicialSet> {
    let p = ChainPoset::new(part);
    match mode {
        MapMode::Right(j) => {
            if j >= part.poset.len() || !part.in_j0(j) {
                return invalid(format!("{j} is not in J₀"));
            }
            Ok(p.with_min(j).congruence_classes(Side::R)?.0)
        }
        MapMode::TwoSided => Ok(p.congruence_classes(Side::A)?.0),
    }
}

/// The same mapping space computed from necklaces in the collapsed nerve.
pub fn mapping_space_oracle(part: &OrderedPartition, mode: MapMode, max_dim: usize) -> Result<SimplicialSet> {
    let (r, t) = quotients(part)?;
    match mode {
        MapMode::Right(j) => {
            if j >= part.poset.len() || !part.in_j0(j) {
                return invalid(format!("{j} is not in J₀"));
            }
            necklace_oracle(&r.set, r.vertex_of(j), 0, max_dim)
        }
        MapMode::TwoSided => necklace_oracle(&t.set, 0, 1, max_dim),
    }
}

const NECKLACE_SIZE_CAP: usize = 64;

/// `𝔠[X](x, y)` up to dimension `max_dim`, from totally nondegenerate
/// necklaces with flags of vertex sets. Needs the nondegenerate simplices to
/// have no directed cycles; see [`necklace_oracle_bounded`] otherwise.
pub fn necklace_oracle(x: &SimplicialSet, a: usize, b: usize, max_dim: usize) -> Result<SimplicialSet> {
    necklace_oracle_bounded(x, a, b, max_dim, None)
}

/// [`necklace_oracle`] restricted to necklaces with at most `max_beads`
/// beads. Without a bound, cyclic inputs are rejected.
pub fn necklace_oracle_bounded(
    x: &SimplicialSet,
    a: usize,
    b: usize,
    max_dim: usize,
    max_beads: Option<usize>,
) -> Result<SimplicialSet> {
    if x.total() > NECKLACE_SIZE_CAP {
        return Err(Error::SizeCap(format!("{} nondegenerate simplices, cap {NECKLACE_SIZE_CAP}", x.total())));
    }
    if a >= x.count(0) || b >= x.count(0) {
        return invalid("endpoint is not a vertex");
    }
    let beads: Vec<SimplexId> = (1..x.counts().len()).flat_map(|d| x.ids(d)).collect();
    if max_beads.is_none() && has_cycle(x, &beads) {
        return Err(Error::Unsupported("necklaces are unbounded on a cyclic set; give a bead bound".into()));
    }
    let mut necklaces = Vec::new();
    let mut cur = Vec::new();
    collect_necklaces(x, &beads, a, b, max_beads, &mut cur, &mut necklaces);

    let shapes: Vec<Shape> = necklaces.iter().map(|n| Shape::new(n)).collect();
    if shapes.iter().any(|sh| sh.offsets.last().is_some_and(|&o| o >= 63)) {
        return Err(Error::SizeCap("necklace longer than 62 positions".into()));
    }
    let mut out = SimplicialSet::empty();
    let mut index: HashMap<(Vec<SimplexId>, Vec<u64>), SimplexId> = HashMap::new();
    // vertices: necklaces of edges, flag {J}
    for (neck, shape) in necklaces.iter().zip(&shapes) {
        if shape.full != shape.joints {
            continue;
        }
        let label = if neck.is_empty() {
            x.label(a).to_string()
        } else {
            let parts: Vec<String> =
                neck.iter().map(|&z| x.verts_of(z).iter().map(|&v| x.label(v)).collect::<Vec<_>>().join("")).collect();
            parts.join("|")
        };
        let v = out.push_vertex(label);
        index.insert((neck.clone(), vec![shape.full]), SimplexId::new(0, v));
    }
    // n-simplices: flags J = T⁰ ⊊ T¹ ⊊ ⋯ ⊊ Tⁿ = V
    for n in 1..=max_dim {
        for (neck, shape) in necklaces.iter().zip(&shapes) {
            let free = shape.full & !shape.joints;
            if free == 0 {
                continue;
            }
            for mids in strict_flags(free, n - 1) {
                let mut flag = vec![shape.joints];
                flag.extend(mids.iter().map(|&m| m | shape.joints));
                flag.push(shape.full);
                let mut faces = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let mut f = flag.clone();
                    f.remove(i);
                    let (nb, weak) = normalize(x, neck, shape, &f);
                    let mut distinct: Vec<u64> = Vec::new();
                    let mut eta = Vec::with_capacity(n);
                    for &s in &weak {
                        if distinct.last() != Some(&s) {
                            distinct.push(s);
                        }
                        eta.push(distinct.len() - 1);
                    }
                    let base = index[&(nb, distinct)];
                    faces.push(Simplex::from_surjection(&eta, base));
                }
                let id = out.push(faces)?;
                index.insert((neck.clone(), flag), id);
            }
        }
    }
    Ok(out.seal())
}

fn has_cycle(x: &SimplicialSet, beads: &[SimplexId]) -> bool {
    let n = x.count(0);
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &z in beads {
        let vs = x.verts_of(z);
        succ[vs[0]].push(*vs.last().unwrap());
    }
    // 0 unvisited, 1 on stack, 2 done
    fn dfs(u: usize, succ: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[u] = 1;
        for &w in &succ[u] {
            if state[w] == 1 || (state[w] == 0 && dfs(w, succ, state)) {
                return true;
            }
        }
        state[u] = 2;
        false
    }
    let mut state = vec![0u8; n];
    (0..n).any(|u| state[u] == 0 && dfs(u, &succ, &mut state))
}

fn collect_necklaces(
    x: &SimplicialSet,
    beads: &[SimplexId],
    at: usize,
    b: usize,
    max_beads: Option<usize>,
    cur: &mut Vec<SimplexId>,
    out: &mut Vec<Vec<SimplexId>>,
) {
    if at == b {
        out.push(cur.clone());
    }
    if max_beads.is_some_and(|m| cur.len() >= m) {
        return;
    }
    for &z in beads {
        let vs = x.verts_of(z);
        if vs[0] == at {
            cur.push(z);
            collect_necklaces(x, beads, *vs.last().unwrap(), b, max_beads, cur, out);
            cur.pop();
        }
    }
}

/// Bead offsets of a necklace; positions are bits of a mask.
struct Shape {
    offsets: Vec<usize>,
    joints: u64,
    full: u64,
}

impl Shape {
    fn new(neck: &[SimplexId]) -> Self {
        let mut offsets = Vec::with_capacity(neck.len() + 1);
        let mut o = 0;
        offsets.push(0);
        for z in neck {
            o += z.dim;
            offsets.push(o);
        }
        let joints = offsets.iter().fold(0u64, |m, &p| m | 1 << p);
        Shape { offsets, joints, full: (1u64 << (o + 1)) - 1 }
    }
}

/// Strictly increasing sequences of `n` nonempty proper subsets of `free`.
fn strict_flags(free: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(free: u64, n: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let below = cur.last().copied();
        // enumerate submasks of free, proper, strictly above the previous one
        let mut sub = free;
        loop {
            if sub != free && sub != 0 && below.is_none_or(|b| sub & b == b && sub != b) {
                cur.push(sub);
                go(free, n, cur, out);
                cur.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    go(free, n, &mut cur, &mut out);
    out.sort();
    out
}

/// Rewrite a necklace with a weak flag `U⁰ ⊆ ⋯ ⊆ Uᵐ`, `U⁰ ⊇ J`, into the
/// unique form with joints `U⁰` and vertices `Uᵐ`: each piece between
/// consecutive points of `U⁰` is replaced by the nondegenerate simplex it
/// comes from, and the flag is pushed along.
fn normalize(x: &SimplicialSet, neck: &[SimplexId], shape: &Shape, flag: &[u64]) -> (Vec<SimplexId>, Vec<u64>) {
    let bits = |m: u64| -> Vec<usize> { (0..64).filter(|&p| m >> p & 1 == 1).collect() };
    let joints = bits(flag[0]);
    let top = *flag.last().unwrap();
    let mut new_beads = Vec::new();
    let mut pos_map: HashMap<usize, usize> = HashMap::new();
    pos_map.insert(joints[0], 0);
    let mut o2 = 0;
    for w in joints.windows(2) {
        let (p, q) = (w[0], w[1]);
        let k = shape.offsets.iter().rposition(|&o| o <= p).unwrap();
        let (o, z) = (shape.offsets[k], neck[k]);
        let local: Vec<usize> = (p..=q).filter(|&t| top >> t & 1 == 1).map(|t| t - o).collect();
        let s = x.act(&local, &Simplex::nondeg(z));
        let eta = s.surjection();
        for (t, &l) in local.iter().enumerate() {
            pos_map.insert(o + l, o2 + eta[t]);
        }
        if s.base.dim > 0 {
            new_beads.push(s.base);
        }
        o2 += s.base.dim;
    }
    let image = |m: u64| -> u64 { bits(m).into_iter().fold(0u64, |acc, p| acc | 1 << pos_map[&p]) };
    (new_beads, flag.iter().map(|&m| image(m)).collect())
}

/// `𝕆^m(i, j)`: subsets of `{i, …, j}` containing both ends.
#[derive(Clone, Debug)]
pub struct CubePoset {
    pub lo: usize,
    pub hi: usize,
    pub objects: Vec<Vec<usize>>,
    pub poset: FinitePoset,
}

impl CubePoset {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return invalid(format!("empty interval [{lo}, {hi}]"));
        }
        let inner: Vec<usize> = if hi > lo { (lo + 1..hi).collect() } else { Vec::new() };
        let mut objects: Vec<Vec<usize>> = Vec::new();
        for mask in 0u64..1 << inner.len() {
            let mut s = vec![lo];
            s.extend(inner.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, &e)| e));
            if hi > lo {
                s.push(hi);
            }
            objects.push(s);
        }
        objects.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let names = objects
            .iter()
            .map(|s| format!("{{{}}}", s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let sets: Vec<BTreeSet<usize>> = objects.iter().map(|s| s.iter().copied().collect()).collect();
        let leq = sets.iter().map(|a| sets.iter().map(|b| a.is_subset(b)).collect()).collect();
        let poset = FinitePoset::new(names, leq)?;
        Ok(CubePoset { lo, hi, objects, poset })
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.objects.iter().position(|o| o == s)
    }
}

/// `ζᵢ : 𝕆^{n+1}(i, n+1) → 𝕆^{2n+1}(i, 2n+1−i)`, `S ∪ {n+1} ↦ S ∪ τ(S)`.
#[derive(Clone, Debug)]
pub struct CubeMap {
    pub source: CubePoset,
    pub target: CubePoset,
    pub image: Vec<usize>,
}

pub fn zeta(n: usize, i: usize) -> Result<CubeMap> {
    if i > n {
        return invalid(format!("ζ needs i ≤ n, got i = {i}, n = {n}"));
    }
    let source = CubePoset::new(i, n + 1)?;
    let target = CubePoset::new(i, 2 * n + 1 - i)?;
    let mut image = Vec::with_capacity(source.objects.len());
    for s in &source.objects {
        let base: Vec<usize> = s.iter().copied().filter(|&e| e <= n).collect();
        let mut t: Vec<usize> = base.iter().copied().chain(base.iter().map(|&e| 2 * n + 1 - e)).collect();
        t.sort_unstable();
        t.dedup();
        image.push(target.index_of(&t).ok_or_else(|| Error::Invalid(format!("ζ image {t:?} is not a cube object")))?);
    }
    monotone_guard(&source.poset, &target.poset, &image, "ζ")?;
    Ok(CubeMap { source, target, image })
}

fn monotone_guard(src: &FinitePoset, tgt: &FinitePoset, image: &[usize], name: &str) -> Result<()> {
    for a in 0..src.len() {
        for b in 0..src.len() {
            if src.leq(a, b) && !tgt.leq(image[a], image[b]) {
                return invalid(format!("{name} is not monotone at {} ≤ {}", src.name(a), src.name(b)));
            }
        }
    }
    Ok(())
}

/// A monotone map between chain posets, stored on object indices.
#[derive(Clone, Debug)]
pub struct PosetMap {
    pub name: String,
    pub source: ChainPoset,
    pub target: ChainPoset,
    pub image: Vec<usize>,
}

impl PosetMap {
    /// Map given on sets of ground elements; the image is sorted before lookup.
    pub fn from_fn(
        name: impl Into<String>,
        source: &ChainPoset,
        target: &ChainPoset,
        f: impl Fn(&[usize]) -> Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        let mut image = Vec::with_capacity(source.len());
        for s in &source.objects {
            let t = f(s);
            let idx = target.find(&t).ok_or_else(|| {
                Error::Invalid(format!(
                    "{name} sends {} to {}, which is not an object",
                    set_name(&source.partition.poset, s),
                    set_name(&target.partition.poset, &t)
                ))
            })?;
            image.push(idx);
        }
        monotone_guard(&source.poset, &target.poset, &image, &name)?;
        Ok(PosetMap { name, source: source.clone(), target: target.clone(), image })
    }

    pub fn apply(&self, chain: &[usize]) -> Vec<usize> {
        chain.iter().map(|&i| self.image[i]).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PosetMap) -> Result<PosetMap> {
        if self.target.objects != other.source.objects {
            return invalid(format!("{} does not compose with {}", self.name, other.name));
        }
        Ok(PosetMap {
            name: format!("{}∘{}", other.name, self.name),
            source: self.source.clone(),
            target: other.target.clone(),
            image: self.image.iter().map(|&i| other.image[i]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source.objects == self.target.objects && self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Every marked edge goes to a marked or identity edge, read in the
    /// quotients by the given sides when present.
    pub fn preserves_marking(
        &self,
        src_thin: &dyn Fn(usize, usize, usize) -> bool,
        tgt_thin: &dyn Fn(usize, usize, usize) -> bool,
        sides: Option<(Side, Side)>,
    ) -> bool {
        let p = &self.source.poset;
        (0..p.len()).all(|a| {
            (0..p.len()).all(|b| {
                let (fa, fb) = (self.image[a], self.image[b]);
                !p.lt(a, b)
                    || !self.source.is_marked(a, b, src_thin, sides.map(|s| s.0))
                    || fa == fb
                    || self.target.is_marked(fa, fb, tgt_thin, sides.map(|s| s.1))
            })
        })
    }
}

/// Outcome of a descent check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descent {
    Yes { checked: usize },
    /// Two equivalent source chains with inequivalent images.
    Counterexample { first: Vec<usize>, second: Vec<usize> },
}

impl Descent {
    pub fn holds(&self) -> bool {
        matches!(self, Descent::Yes { .. })
    }
}

/// Exhaustive check, over weak chains of up to `max_dim + 1` objects, that
/// `f` sends `src`-equivalent chains to `tgt`-equivalent chains.
pub fn descends(f: &PosetMap, src: Side, tgt: Side, max_dim: usize) -> Descent {
    let mut checked = 0;
    for len in 1..=max_dim + 1 {
        let mut seen: HashMap<Vec<Vec<usize>>, (Vec<usize>, Vec<Vec<usize>>)> = HashMap::new();
        for chain in f.source.weak_chains(len) {
            checked += 1;
            let key = f.source.truncate_sets(&chain, src);
            let img = f.target.truncate_sets(&f.apply(&chain), tgt);
            match seen.get(&key) {
                Some((rep, other)) if *other != img => {
                    return Descent::Counterexample { first: rep.clone(), second: chain };
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (chain, img));
                }
            }
        }
    }
    Descent::Yes { checked }
}

/// The named poset maps between chain posets of the zoo levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section3Map {
    /// `P_★ → P_Q`, `(S₀, v) ↦ (S₀, τ(S₀))`.
    B,
    /// `B` with the reversal `τ` replaced by a shift: a negative control.
    WrongB,
    /// `P_□ → P_⊞`, `(S₀, S₁) ↦ (S₀, τ(S₀), v)`.
    G,
    /// `P_□ → P_⊞`, `(S₀, S₁) ↦ (S₀, τ(S₀), ∅)`.
    GNoCone,
    /// `P_□ → P_⊞`, `(S₀, S₁) ↦ (S₀, ∅, v)`.
    H,
    /// `P_□ → P_⊞`, `(S₀, S₁) ↦ (S₀, τ(S₀^{≥i}), v)` for `0 ≤ i ≤ n+1`.
    HRho(usize),
    /// `P_★ → P_G`, `(S₀, v) ↦ (S₀, ∅, v)`.
    SAlpha,
    /// The inclusion `P_G → P_⊞`.
    SBeta,
    /// `P_★ → P_⊞`, the composite.
    S,
    /// `P_G → P_★`, `(S₀, S₁, v) ↦ (S₀, v)`.
    RAlpha,
    /// `P_⊞ → P_G`.
    RBeta,
    /// `P_□ → P_★` induced by `(i, k) ↦ i` for `k = 0` and `n+1` for `k = 1`.
    Collapse,
}

impl Section3Map {
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some(i) = s.strip_prefix("h_rho:").or_else(|| s.strip_prefix("hrho:")) {
            return i.parse().ok().map(Section3Map::HRho);
        }
        Some(match s {
            "B" => Section3Map::B,
            "wrong-B" => Section3Map::WrongB,
            "G" => Section3Map::G,
            "G0" => Section3Map::GNoCone,
            "H" => Section3Map::H,
            "s_alpha" => Section3Map::SAlpha,
            "s_beta" => Section3Map::SBeta,
            "s" => Section3Map::S,
            "r_alpha" => Section3Map::RAlpha,
            "r_beta" => Section3Map::RBeta,
            "collapse" => Section3Map::Collapse,
            _ => return None,
        })
    }

    pub fn name(self) -> String {
        match self {
            Section3Map::B => "B".into(),
            Section3Map::WrongB => "wrong-B".into(),
            Section3Map::G => "G".into(),
            Section3Map::GNoCone => "G0".into(),
            Section3Map::H => "H".into(),
            Section3Map::HRho(i) => format!("h_rho:{i}"),
            Section3Map::SAlpha => "s_alpha".into(),
            Section3Map::SBeta => "s_beta".into(),
            Section3Map::S => "s".into(),
            Section3Map::RAlpha => "r_alpha".into(),
            Section3Map::RBeta => "r_beta".into(),
            Section3Map::Collapse => "collapse".into(),
        }
    }
}

/// Chain posets of the zoo levels at `n`.
#[derive(Clone, Debug)]
pub struct ChainPosets {
    pub n: usize,
    pub star: ChainPoset,
    pub q: ChainPoset,
    pub boxtimes: ChainPoset,
    pub square: ChainPoset,
    pub g: ChainPoset,
}

impl ChainPosets {
    pub fn new(n: usize) -> Result<Self> {
        let star = ChainPoset::new(&OrderedPartition::of_level(SimplexObject::Star, n)?);
        let q = ChainPoset::new(&OrderedPartition::of_level(SimplexObject::Q, n)?);
        let boxtimes = ChainPoset::new(&OrderedPartition::of_level(SimplexObject::Boxtimes, n)?);
        let square = ChainPoset::new(&OrderedPartition::of_square(n)?);
        let g = boxtimes.restrict(|s| in_pg(n, s));
        Ok(ChainPosets { n, star, q, boxtimes, square, g })
    }

    /// Thin triangles of the ground poset of `p`, as a predicate.
    pub fn thin_of(&self, which: &ChainPoset) -> Box<dyn Fn(usize, usize, usize) -> bool> {
        let n = self.n;
        let set: BTreeSet<[usize; 3]> = if std::ptr::eq(which, &self.square) {
            square_level(n, false)
                .map(|l| l.set.cell_vertices().into_iter().map(|v| [v[0], v[1], v[2]]).collect())
                .unwrap_or_default()
        } else if std::ptr::eq(which, &self.star) {
            SimplexObject::Star.thin(n)
        } else if std::ptr::eq(which, &self.q) {
            SimplexObject::Q.thin(n)
        } else {
            SimplexObject::Boxtimes.thin(n)
        };
        Box::new(move |a, b, c| set.contains(&[a, b, c]))
    }

    fn poset(&self, which: PosetName) -> &ChainPoset {
        match which {
            PosetName::Star => &self.star,
            PosetName::Q => &self.q,
            PosetName::Boxtimes => &self.boxtimes,
            PosetName::Square => &self.square,
            PosetName::G => &self.g,
        }
    }
}

#[derive(Clone, Copy)]
enum PosetName {
    Star,
    Q,
    Boxtimes,
    Square,
    G,
}

/// `(S₀, S₁, S₂)` of `⊞(n)` belongs to `P_G`.
fn in_pg(n: usize, s: &[usize]) -> bool {
    let v = 2 * n + 2;
    if !s.contains(&v) {
        return false;
    }
    let s0: Vec<usize> = s.iter().copied().filter(|&e| e <= n).collect();
    let s1: Vec<usize> = s.iter().copied().filter(|&e| e > n && e < v).collect();
    match s1.first() {
        None => true,
        Some(&m) => {
            s1.len() == 2 * n + 2 - m && s1.iter().all(|&e| s0.contains(&(2 * n + 1 - e)))
        }
    }
}

/// Instantiate a named map at level `n`.
pub fn section3_map(which: Section3Map, n: usize) -> Result<PosetMap> {
    let cp = ChainPosets::new(n)?;
    section3_map_in(&cp, which)
}

pub fn section3_map_in(cp: &ChainPosets, which: Section3Map) -> Result<PosetMap> {
    let n = cp.n;
    let top = 2 * n + 1;
    let v = 2 * n + 2;
    let tau = move |e: usize| top - e;
    // ⊞ and Q: unbarred part; □: first row
    let low = move |s: &[usize]| -> Vec<usize> { s.iter().copied().filter(|&e| e <= n).collect() };
    let row0 = |s: &[usize]| -> Vec<usize> { s.iter().filter(|&&e| e % 2 == 0).map(|e| e / 2).collect() };
    use PosetName as P;
    let (src, tgt, f): (P, P, Box<dyn Fn(&[usize]) -> Vec<usize>>) = match which {
        Section3Map::B => (P::Star, P::Q, Box::new(move |s| low(s).into_iter().flat_map(|e| [e, tau(e)]).collect())),
        Section3Map::WrongB => {
            (P::Star, P::Q, Box::new(move |s| low(s).into_iter().flat_map(|e| [e, e + n + 1]).collect()))
        }
        Section3Map::G => (
            P::Square,
            P::Boxtimes,
            Box::new(move |s| {
                let s0 = row0(s);
                s0.iter().copied().chain(s0.iter().map(|&e| tau(e))).chain([v]).collect()
            }),
        ),
        Section3Map::GNoCone => (
            P::Square,
            P::Boxtimes,
            Box::new(move |s| {
                let s0 = row0(s);
                s0.iter().copied().chain(s0.iter().map(|&e| tau(e))).collect()
            }),
        ),
        Section3Map::H => (P::Square, P::Boxtimes, Box::new(move |s| row0(s).into_iter().chain([v]).collect())),
        Section3Map::HRho(i) => {
            if i > n + 1 {
                return invalid(format!("h_ρ needs 0 ≤ i ≤ n+1, got {i}"));
            }
            (
                P::Square,
                P::Boxtimes,
                Box::new(move |s| {
                    let s0 = row0(s);
                    s0.iter().copied().chain(s0.iter().filter(|&&e| e >= i).map(|&e| tau(e))).chain([v]).collect()
                }),
            )
        }
        Section3Map::SAlpha => (P::Star, P::G, Box::new(move |s| low(s).into_iter().chain([v]).collect())),
        Section3Map::SBeta => (P::G, P::Boxtimes, Box::new(|s| s.to_vec())),
        Section3Map::S => (P::Star, P::Boxtimes, Box::new(move |s| low(s).into_iter().chain([v]).collect())),
        Section3Map::RAlpha => (P::G, P::Star, Box::new(move |s| low(s).into_iter().chain([n + 1]).collect())),
        Section3Map::RBeta => (
            P::Boxtimes,
            P::G,
            Box::new(move |s| {
                let mut out = low(s);
                match s.iter().copied().find(|&e| e > n && e < v) {
                    None => {}
                    Some(m) => {
                        out.extend((m..=top).map(tau));
                        out.extend(m..=top);
                    }
                }
                out.push(v);
                out.sort_unstable();
                out.dedup();
                out
            }),
        ),
        Section3Map::Collapse => (P::Square, P::Star, Box::new(move |s| row0(s).into_iter().chain([n + 1]).collect())),
    };
    PosetMap::from_fn(which.name(), cp.poset(src), cp.poset(tgt), f)
}

/// The congruences a named map is expected to respect.
pub fn section3_sides(which: Section3Map) -> (Side, Side) {
    let _ = which;
    (Side::A, Side::A)
}

/// Monotonicity (guaranteed by construction), descent and marking
/// preservation of a named map.
#[derive(Clone, Debug)]
pub struct Section3Report {
    pub name: String,
    pub n: usize,
    pub descent: Descent,
    pub preserves_marking: bool,
}

pub fn section3_report(which: Section3Map, n: usize, max_dim: usize) -> Result<Section3Report> {
    let cp = ChainPosets::new(n)?;
    let f = section3_map_in(&cp, which)?;
    let (s, t) = section3_sides(which);
    let descent = descends(&f, s, t, max_dim);
    let thin_of = |p: &ChainPoset| -> Box<dyn Fn(usize, usize, usize) -> bool> {
        let which = [&cp.star, &cp.q, &cp.boxtimes, &cp.square, &cp.g]
            .into_iter()
            .find(|c| c.objects == p.objects && c.partition == p.partition)
            .unwrap();
        cp.thin_of(which)
    };
    let preserves_marking = f.preserves_marking(&*thin_of(&f.source), &*thin_of(&f.target), Some((s, t)));
    Ok(Section3Report { name: f.name.clone(), n, descent, preserves_marking })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{isomorphic, standard};

    fn chain_part(n: usize, j0: &[usize], j1: &[usize]) -> OrderedPartition {
        make_partition(&FinitePoset::chain(n), j0, j1).unwrap()
    }

    #[test]
    fn partition_validation() {
        let q1 = chain_part(3, &[0, 1], &[2, 3]);
        assert_eq!(q1.j1(), vec![2, 3]);
        let err = make_partition(&FinitePoset::chain(1), &[1], &[0]).unwrap_err();
        assert!(err.to_string().contains("order violation"));
        assert!(make_partition(&FinitePoset::chain(1), &[0, 1], &[1]).unwrap_err().to_string().contains("overlap"));
        assert!(make_partition(&FinitePoset::chain(1), &[0], &[]).unwrap_err().to_string().contains("non-cover"));
        let op = q1.opposite();
        assert!(make_partition(&op.poset, &op.j0(), &op.j1()).is_ok());
    }

    #[test]
    fn quotient_examples() {
        let (r, t) = quotients(&chain_part(1, &[0], &[1])).unwrap();
        assert!(isomorphic(&r.set, &standard(1)).is_some());
        assert!(isomorphic(&t.set, &standard(1)).is_some());
        let (r, _) = quotients(&chain_part(2, &[0], &[1, 2])).unwrap();
        assert_eq!(&r.set.counts()[..2], &[2, 2]);
        assert_eq!(r.set.label(0), "*1");
        let (_, t) = quotients(&chain_part(3, &[0, 1], &[2, 3])).unwrap();
        assert_eq!(t.set.count(0), 2);
        assert_eq!((t.vertex_of(1), t.vertex_of(3)), (0, 1));
    }

    #[test]
    fn truncation_examples() {
        let q1 = chain_part(3, &[0, 1], &[2, 3]);
        let s = vec![vec![0, 1, 2, 3]];
        assert_eq!(truncate(&q1, &s, Side::R), vec![vec![0, 1, 2]]);
        assert_eq!(truncate(&q1, &s, Side::L), vec![vec![1, 2, 3]]);
        assert_eq!(truncate(&q1, &s, Side::A), vec![vec![1, 2]]);
        let p = chain_part(2, &[0], &[1, 2]);
        let c = vec![vec![0, 2], vec![0, 1, 2]];
        assert_eq!(truncate(&p, &c, Side::R), c);
    }

    #[test]
    fn truncation_composes() {
        for n in 1..=2 {
            for obj in [SimplexObject::Q, SimplexObject::Star, SimplexObject::Boxtimes] {
                let cp = ChainPoset::new(&OrderedPartition::of_level(obj, n).unwrap());
                for len in 1..=3 {
                    for c in cp.weak_chains(len) {
                        let sets = cp.truncate_sets(&c, Side::A);
                        let r = cp.truncate_sets(&c, Side::R);
                        let l = cp.truncate_sets(&c, Side::L);
                        assert_eq!(truncate(&cp.partition, &r, Side::L), sets);
                        assert_eq!(truncate(&cp.partition, &l, Side::R), sets);
                        for side in [Side::R, Side::L, Side::A] {
                            let t = cp.truncate_sets(&c, side);
                            assert_eq!(truncate(&cp.partition, &t, side), t);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn congruences_on_levels() {
        for n in 0..=2 {
            let mut parts: Vec<OrderedPartition> = [SimplexObject::Q, SimplexObject::Star, SimplexObject::Boxtimes]
                .into_iter()
                .map(|o| OrderedPartition::of_level(o, n).unwrap())
                .collect();
            parts.push(OrderedPartition::of_square(n).unwrap());
            for part in parts {
                let cp = ChainPoset::new(&part);
                for side in [Side::R, Side::L, Side::A] {
                    cp.check_congruence(side, 3).unwrap();
                    if n < 2 {
                        cp.congruence_classes(side).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn mapping_space_examples() {
        let p = chain_part(2, &[0, 1], &[2]);
        assert!(isomorphic(&mapping_space(&p, MapMode::Right(0)).unwrap(), &standard(1)).is_some());
        let p = chain_part(2, &[0], &[1, 2]);
        let m = mapping_space(&p, MapMode::Right(0)).unwrap();
        assert!(isomorphic(&m, &standard(1)).is_some());
        assert_eq!(m.labels(), &["{0,1}".to_string(), "{0,2}".to_string()]);
        let p = chain_part(1, &[0], &[1]);
        assert!(isomorphic(&mapping_space(&p, MapMode::Right(0)).unwrap(), &standard(0)).is_some());
        assert!(mapping_space(&p, MapMode::Right(1)).is_err());
    }

    #[test]
    fn necklace_examples() {
        let m = necklace_oracle(&standard(2), 0, 2, 2).unwrap();
        assert!(isomorphic(&m, &standard(1)).is_some());
        let m = necklace_oracle(&standard(3), 0, 3, 2).unwrap();
        assert_eq!(m.counts(), vec![4, 5, 2]);
        m.validate().unwrap();
        let e = standard(1);
        let ends: BTreeSet<SimplexId> = e.ids(0).collect();
        let (loop_, _) = crate::sset::collapse(&e, &[ends]).unwrap();
        assert!(necklace_oracle(&loop_, 0, 0, 1).is_err());
        let m = necklace_oracle_bounded(&loop_, 0, 0, 0, Some(2)).unwrap();
        assert_eq!(m.count(0), 3);
    }

    #[test]
    fn necklaces_agree_on_examples() {
        for (n, j0, j1) in [(2, vec![0], vec![1, 2]), (3, vec![0, 1], vec![2, 3]), (3, vec![0], vec![1, 2, 3])] {
            let p = chain_part(n, &j0, &j1);
            for mode in j0.iter().map(|&j| MapMode::Right(j)).chain([MapMode::TwoSided]) {
                let a = mapping_space(&p, mode).unwrap().skeleton(2);
                let b = mapping_space_oracle(&p, mode, 2).unwrap();
                assert!(isomorphic(&a, &b).is_some(), "{n} {j0:?} {mode:?}: {:?} vs {:?}", a.counts(), b.counts());
            }
        }
    }

    #[test]
    fn zeta_example() {
        let z = zeta(1, 0).unwrap();
        let img = |s: &[usize]| z.target.objects[z.image[z.source.index_of(s).unwrap()]].clone();
        assert_eq!(img(&[0, 2]), vec![0, 3]);
        assert_eq!(img(&[0, 1, 2]), vec![0, 1, 2, 3]);
        for n in 0..=2 {
            for i in 0..=n {
                zeta(n, i).unwrap();
            }
        }
    }

    #[test]
    fn h_rho_specialises() {
        for n in 0..=2 {
            let cp = ChainPosets::new(n).unwrap();
            let get = |w| section3_map_in(&cp, w).unwrap().image;
            assert_eq!(get(Section3Map::HRho(n + 1)), get(Section3Map::H));
            assert_eq!(get(Section3Map::HRho(0)), get(Section3Map::G));
        }
    }

    #[test]
    fn r_beta_example_and_sections() {
        let cp = ChainPosets::new(1).unwrap();
        let rb = section3_map_in(&cp, Section3Map::RBeta).unwrap();
        let s = cp.boxtimes.find(&[0, 2]).unwrap();
        assert_eq!(cp.g.objects[rb.image[s]], vec![0, 1, 2, 3, 4]);
        for n in 0..=2 {
            let cp = ChainPosets::new(n).unwrap();
            let m = |w| section3_map_in(&cp, w).unwrap();
            assert!(m(Section3Map::SAlpha).then(&m(Section3Map::RAlpha)).unwrap().is_identity());
            assert!(m(Section3Map::SBeta).then(&m(Section3Map::RBeta)).unwrap().is_identity());
            let s = m(Section3Map::SAlpha).then(&m(Section3Map::SBeta)).unwrap();
            assert_eq!(s.image, m(Section3Map::S).image);
        }
    }

    #[test]
    fn descent_checks() {
        for i in 0..=2 {
            assert!(section3_report(Section3Map::HRho(i), 1, 2).unwrap().descent.holds(), "h_rho {i}");
        }
        assert!(section3_report(Section3Map::B, 1, 2).unwrap().descent.holds());
        let wrong = section3_report(Section3Map::WrongB, 1, 2).unwrap();
        assert!(matches!(wrong.descent, Descent::Counterexample { .. }));
    }

    #[test]
    fn named_maps_descend_and_preserve_marking() {
        use Section3Map::*;
        for n in 0..=2 {
            let maps = [B, G, GNoCone, H, SAlpha, SBeta, S, RAlpha, RBeta, Collapse].into_iter().chain((0..=n + 1).map(HRho));
            for m in maps {
                let r = section3_report(m, n, if n < 2 { 2 } else { 1 }).unwrap();
                assert!(r.descent.holds(), "{} at n = {n}", r.name);
                assert!(r.preserves_marking, "{} at n = {n}", r.name);
            }
        }
    }

    #[test]
    fn g_variants_agree_on_quotients() {
        for n in 0..=2 {
            let cp = ChainPosets::new(n).unwrap();
            let g = section3_map_in(&cp, Section3Map::G).unwrap();
            let g0 = section3_map_in(&cp, Section3Map::GNoCone).unwrap();
            for len in 1..=3 {
                for c in cp.square.weak_chains(len) {
                    assert_eq!(
                        cp.boxtimes.truncate_sets(&g.apply(&c), Side::A),
                        cp.boxtimes.truncate_sets(&g0.apply(&c), Side::A)
                    );
                }
            }
        }
    }

    #[test]
    fn ambi_differs_from_right() {
        let cp = ChainPosets::new(1).unwrap().boxtimes;
        let mut by_a: HashMap<Vec<Vec<usize>>, Vec<usize>> = HashMap::new();
        let mut found = false;
        for len in 1..=2 {
            for c in cp.weak_chains(len) {
                let a = cp.truncate_sets(&c, Side::A);
                if let Some(rep) = by_a.get(&a) {
                    if cp.truncate_sets(rep, Side::R) != cp.truncate_sets(&c, Side::R) {
                        found = true;
                    }
                } else {
                    by_a.insert(a, c);
                }
            }
        }
        assert!(found);
    }
}
