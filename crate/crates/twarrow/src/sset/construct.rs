//! Constructors, limits and colimits of finite simplicial sets.

use super::map::SimplicialMap;
use super::ordmap;
use super::poset::FinitePoset;
use super::set::SimplicialSet;
use super::simplex::{Simplex, SimplexId};
use crate::error::{check_cap, invalid, Error, Result};
use std::collections::{BTreeSet, HashMap, HashSet};

/// Build the simplicial set whose nondegenerate simplices are the given
/// vertex sequences (strings of distinct vertices) together with all their
/// nonempty subsequences. Simplices are ordered by dimension and then
/// lexicographically by vertex sequence.
pub fn ordered_complex(labels: Vec<String>, generators: &[Vec<usize>]) -> Result<SimplicialSet> {
    let nv = labels.len();
    let top = generators.iter().map(|g| g.len()).max().unwrap_or(0);
    let mut levels: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); top.max(1)];
    for g in generators {
        if g.is_empty() {
            continue;
        }
        if g.iter().any(|&v| v >= nv) {
            return invalid(format!("generator {g:?} mentions an unknown vertex"));
        }
        let distinct: HashSet<_> = g.iter().collect();
        if distinct.len() != g.len() {
            return invalid(format!("generator {g:?} repeats a vertex"));
        }
        levels[g.len() - 1].insert(g.clone());
    }
    for d in (1..top).rev() {
        let cur: Vec<Vec<usize>> = levels[d].iter().cloned().collect();
        for s in cur {
            for k in 0..s.len() {
                let mut f = s.clone();
                f.remove(k);
                levels[d - 1].insert(f);
            }
        }
    }
    let mut out = SimplicialSet::empty();
    for l in &labels {
        out.push_vertex(l.clone());
    }
    let mut index: HashMap<Vec<usize>, SimplexId> = (0..nv).map(|v| (vec![v], SimplexId::new(0, v))).collect();
    for (d, level) in levels.iter().enumerate().skip(1) {
        let mut seqs: Vec<&Vec<usize>> = level.iter().collect();
        seqs.sort();
        for s in seqs {
            let faces = (0..=d)
                .map(|k| {
                    let mut f = s.clone();
                    f.remove(k);
                    Simplex::nondeg(index[&f])
                })
                .collect();
            let id = out.push(faces)?;
            index.insert(s.clone(), id);
        }
    }
    Ok(out.seal())
}

fn numeric_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The standard simplex `Δⁿ`.
pub fn standard(n: usize) -> SimplicialSet {
    ordered_complex(numeric_labels(n + 1), &[(0..=n).collect()]).expect("standard simplex")
}

/// The subcomplex of `Δⁿ` generated by the listed vertex subsets.
pub fn simplex_subcomplex(n: usize, gens: &[Vec<usize>]) -> Result<SimplicialSet> {
    for g in gens {
        if g.windows(2).any(|w| w[0] >= w[1]) {
            return invalid(format!("{g:?} is not an increasing vertex list"));
        }
    }
    ordered_complex(numeric_labels(n + 1), gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexKind {
    Standard,
    Boundary,
    Horn,
    Spine,
}

/// `Δⁿ`, `∂Δⁿ`, `Λⁿᵢ` or `Spⁿ`.
pub fn simplex_family(kind: SimplexKind, n: usize, i: Option<usize>) -> Result<SimplicialSet> {
    check_cap(n)?;
    let faces_except = |skip: Option<usize>| -> Vec<Vec<usize>> {
        (0..=n)
            .filter(|&k| Some(k) != skip)
            .map(|k| (0..=n).filter(|&t| t != k).collect())
            .collect()
    };
    match (kind, i) {
        (SimplexKind::Standard, None) => Ok(standard(n)),
        (SimplexKind::Boundary, None) => ordered_complex(numeric_labels(n + 1), &faces_except(None)),
        (SimplexKind::Horn, Some(i)) if i <= n => {
            ordered_complex(numeric_labels(n + 1), &faces_except(Some(i)))
        }
        (SimplexKind::Spine, None) => {
            let mut gens: Vec<Vec<usize>> = (0..n).map(|k| vec![k, k + 1]).collect();
            gens.push(vec![0]);
            ordered_complex(numeric_labels(n + 1), &gens)
        }
        _ => invalid(format!("no {kind:?} family member for n = {n}, i = {i:?}")),
    }
}

/// The nerve: nondegenerate `k`-simplices are strict chains of length `k+1`.
pub fn nerve(p: &FinitePoset) -> SimplicialSet {
    let chains = p.chains();
    ordered_complex(p.names().to_vec(), &chains).expect("chains are closed under deletion")
}

/// Reindex a simplex as a simplex of the opposite set.
pub fn op_simplex(s: &Simplex) -> Simplex {
    let d = s.dim();
    let mut word: Vec<usize> = s.word.iter().map(|&j| d - 1 - j).collect();
    word.reverse();
    Simplex { word, base: s.base }
}

/// The opposite simplicial set. Nondegenerate simplices keep their ids and
/// `d_i` becomes `d_{dim−i}`.
pub fn opposite(x: &SimplicialSet) -> SimplicialSet {
    let mut out = SimplicialSet::empty();
    for l in x.labels() {
        out.push_vertex(l.clone());
    }
    for d in 1..=x.top_dim().unwrap_or(0) {
        for id in x.ids(d) {
            let fs = x.faces_of(id);
            let faces = (0..=d).map(|i| op_simplex(&fs[d - i])).collect();
            out.push(faces).expect("opposite faces exist");
        }
    }
    out.seal()
}

/// Product with its projections and the pair-normalisation table.
#[derive(Clone, Debug)]
pub struct Product {
    pub set: SimplicialSet,
    pub pr1: SimplicialMap,
    pub pr2: SimplicialMap,
    index: HashMap<(Simplex, Simplex), SimplexId>,
}

impl Product {
    /// The product simplex `(a, b)` for simplices `a`, `b` of equal dimension.
    pub fn pair(&self, a: &Simplex, b: &Simplex) -> Simplex {
        product_pair(&self.index, a, b)
    }
}

fn product_pair(index: &HashMap<(Simplex, Simplex), SimplexId>, a: &Simplex, b: &Simplex) -> Simplex {
    assert_eq!(a.dim(), b.dim(), "pair of simplices of different dimension");
    let common: Vec<usize> = a.word.iter().copied().filter(|j| b.word.contains(j)).collect();
    let d = a.dim();
    if common.is_empty() {
        return Simplex::nondeg(index[&(a.clone(), b.clone())]);
    }
    // factor the common degeneracy ε out of both components
    let mut eps = vec![0usize; d + 1];
    for t in 0..d {
        eps[t + 1] = eps[t] + usize::from(!common.contains(&t));
    }
    let e = eps[d];
    let mut sec = vec![0usize; e + 1];
    for t in (0..=d).rev() {
        sec[eps[t]] = t;
    }
    let strip = |s: &Simplex| Simplex::from_surjection(&ordmap::compose(&s.surjection(), &sec), s.base);
    let base = index[&(strip(a), strip(b))];
    Simplex::from_surjection(&eps, base)
}

/// Categorical product, by enumerating pairs of surjections with disjoint
/// repeat sets (shuffles).
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> Product {
    let (tx, ty) = (x.top_dim(), y.top_dim());
    let mut levels: Vec<Vec<(Vec<(usize, usize)>, Simplex, Simplex)>> = Vec::new();
    if let (Some(tx), Some(ty)) = (tx, ty) {
        levels = vec![Vec::new(); tx + ty + 1];
        for p in 0..=tx {
            for q in 0..=ty {
                for d in p.max(q)..=p + q {
                    let sa = ordmap::surjections(d, p);
                    let sb = ordmap::surjections(d, q);
                    for alpha in &sa {
                        for beta in &sb {
                            let joint = (0..d).all(|t| alpha[t] != alpha[t + 1] || beta[t] != beta[t + 1]);
                            if !joint {
                                continue;
                            }
                            for xi in x.ids(p) {
                                for yi in y.ids(q) {
                                    let a = Simplex::from_surjection(alpha, xi);
                                    let b = Simplex::from_surjection(beta, yi);
                                    let va = x.vertices(&a);
                                    let vb = y.vertices(&b);
                                    let key: Vec<(usize, usize)> = va.into_iter().zip(vb).collect();
                                    levels[d].push((key, a, b));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let ny = y.count(0);
    let mut set = SimplicialSet::empty();
    let mut index: HashMap<(Simplex, Simplex), SimplexId> = HashMap::new();
    let mut pr1 = Vec::new();
    let mut pr2 = Vec::new();
    for (d, level) in levels.iter_mut().enumerate() {
        level.sort();
        let mut l1 = Vec::with_capacity(level.len());
        let mut l2 = Vec::with_capacity(level.len());
        for (key, a, b) in level.iter() {
            let id = if d == 0 {
                let (vx, vy) = key[0];
                debug_assert_eq!(set.count(0), vx * ny + vy);
                SimplexId::new(0, set.push_vertex(format!("({},{})", x.label(vx), y.label(vy))))
            } else {
                let faces = (0..=d).map(|i| product_pair(&index, &x.face(a, i), &y.face(b, i))).collect();
                set.push(faces).expect("product faces exist")
            };
            index.insert((a.clone(), b.clone()), id);
            l1.push(a.clone());
            l2.push(b.clone());
        }
        pr1.push(l1);
        pr2.push(l2);
    }
    let set = set.seal();
    while pr1.last().is_some_and(|l: &Vec<Simplex>| l.is_empty()) {
        pr1.pop();
        pr2.pop();
    }
    Product {
        pr1: SimplicialMap::new_unchecked(set.clone(), x.clone(), pr1),
        pr2: SimplicialMap::new_unchecked(set.clone(), y.clone(), pr2),
        set,
        index,
    }
}

/// Join with the embeddings of both sides.
#[derive(Clone, Debug)]
pub struct Join {
    pub set: SimplicialSet,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pairs: HashMap<(SimplexId, SimplexId), SimplexId>,
}

impl Join {
    /// The join of two simplices, either of which may be degenerate.
    pub fn pair(&self, a: &Simplex, b: &Simplex) -> Simplex {
        join_pair(&self.pairs, a, b)
    }
}

fn join_pair(pairs: &HashMap<(SimplexId, SimplexId), SimplexId>, a: &Simplex, b: &Simplex) -> Simplex {
    let p = a.dim();
    let mut word: Vec<usize> = b.word.iter().map(|&j| p + 1 + j).collect();
    word.extend(a.word.iter().copied());
    Simplex { word, base: pairs[&(a.base, b.base)] }
}

/// `X ⋆ Y`. Vertices of `X` come first.
pub fn join(x: &SimplicialSet, y: &SimplicialSet) -> Join {
    let tx = x.top_dim().map_or(0, |t| t + 1);
    let ty = y.top_dim().map_or(0, |t| t + 1);
    let mut set = SimplicialSet::empty();
    let mut left: Vec<Vec<Simplex>> = vec![Vec::new(); tx];
    let mut right: Vec<Vec<Simplex>> = vec![Vec::new(); ty];
    let mut pairs: HashMap<(SimplexId, SimplexId), SimplexId> = HashMap::new();
    let top = (tx + ty).max(1);
    for d in 0..top {
        if d < tx {
            for id in x.ids(d) {
                let nid = if d == 0 {
                    SimplexId::new(0, set.push_vertex(x.label(id.idx)))
                } else {
                    let faces = x.faces_of(id).iter().map(|f| map_side(&left, f)).collect();
                    set.push(faces).expect("join faces exist")
                };
                left[d].push(Simplex::nondeg(nid));
            }
        }
        if d < ty {
            for id in y.ids(d) {
                let nid = if d == 0 {
                    SimplexId::new(0, set.push_vertex(y.label(id.idx)))
                } else {
                    let faces = y.faces_of(id).iter().map(|f| map_side(&right, f)).collect();
                    set.push(faces).expect("join faces exist")
                };
                right[d].push(Simplex::nondeg(nid));
            }
        }
        for p in 0..d.min(tx) {
            let q = d - 1 - p;
            if q >= ty {
                continue;
            }
            for xi in x.ids(p) {
                for yi in y.ids(q) {
                    let mut faces = Vec::with_capacity(d + 1);
                    for i in 0..=d {
                        let f = if i <= p {
                            if p == 0 {
                                right[q][yi.idx].clone()
                            } else {
                                let a = x.face(&Simplex::nondeg(xi), i);
                                join_pair(&pairs, &a, &Simplex::nondeg(yi))
                            }
                        } else if q == 0 {
                            left[p][xi.idx].clone()
                        } else {
                            let b = y.face(&Simplex::nondeg(yi), i - p - 1);
                            join_pair(&pairs, &Simplex::nondeg(xi), &b)
                        };
                        faces.push(f);
                    }
                    let nid = set.push(faces).expect("join faces exist");
                    pairs.insert((xi, yi), nid);
                }
            }
        }
    }
    let set = set.seal();
    Join {
        left: SimplicialMap::new_unchecked(x.clone(), set.clone(), left),
        right: SimplicialMap::new_unchecked(y.clone(), set.clone(), right),
        set,
        pairs,
    }
}

fn map_side(level: &[Vec<Simplex>], f: &Simplex) -> Simplex {
    let img = &level[f.base.dim][f.base.idx];
    Simplex { word: f.word.clone(), base: img.base }
}

/// Pushout of `f : A → X` and `g : A → Y` with cocone maps `X → P`, `Y → P`.
/// One leg must be a monomorphism.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<(SimplicialSet, SimplicialMap, SimplicialMap)> {
    if f.source() != g.source() {
        return invalid("pushout legs have different sources");
    }
    if f.is_mono() {
        let mut pre: HashMap<SimplexId, SimplexId> = HashMap::new();
        for id in f.source().all_ids() {
            pre.insert(f.image(id).base, id);
        }
        let (p, ix, iy) = glue(f.target(), |x| pre.get(&x).map(|a| g.image(*a).clone()), g.target());
        Ok((p, ix, iy))
    } else if g.is_mono() {
        let (p, iy, ix) = pushout(g, f)?;
        Ok((p, ix, iy))
    } else {
        Err(Error::Unsupported("pushout needs one injective leg".into()))
    }
}

/// Glue `X` onto `Y` along a subcomplex of `X` described by `attach`, which
/// gives the image in `Y` of each nondegenerate simplex of the subcomplex.
/// Returns `P = Y ∪ (X ∖ A)`, the map `X → P` and the inclusion `Y → P`.
pub fn glue(
    x: &SimplicialSet,
    attach: impl Fn(SimplexId) -> Option<Simplex>,
    y: &SimplicialSet,
) -> (SimplicialSet, SimplicialMap, SimplicialMap) {
    let top = x.top_dim().max(y.top_dim()).map_or(0, |t| t + 1);
    let mut p = SimplicialSet::empty();
    let mut phi: Vec<Vec<Simplex>> = Vec::new();
    let mut incl: Vec<Vec<Simplex>> = Vec::new();
    for d in 0..top {
        let mut l = Vec::new();
        for id in y.ids(d) {
            let nid = if d == 0 {
                SimplexId::new(0, p.push_vertex(y.label(id.idx)))
            } else {
                let faces = y.faces_of(id).to_vec();
                p.push(faces).expect("faces of Y exist in P")
            };
            l.push(Simplex::nondeg(nid));
        }
        if d < y.counts().len() {
            incl.push(l);
        }
        let mut lx = Vec::new();
        for id in x.ids(d) {
            if let Some(img) = attach(id) {
                lx.push(img);
                continue;
            }
            let nid = if d == 0 {
                SimplexId::new(0, p.push_vertex(x.label(id.idx)))
            } else {
                let faces = x
                    .faces_of(id)
                    .iter()
                    .map(|f| {
                        let img = &phi[f.base.dim][f.base.idx];
                        if f.word.is_empty() {
                            img.clone()
                        } else {
                            p.act(&f.surjection(), img)
                        }
                    })
                    .collect();
                p.push(faces).expect("glued faces exist")
            };
            lx.push(Simplex::nondeg(nid));
        }
        if d < x.counts().len() {
            phi.push(lx);
        }
    }
    let p = p.seal();
    (
        p.clone(),
        SimplicialMap::new_unchecked(x.clone(), p.clone(), phi),
        SimplicialMap::new_unchecked(y.clone(), p, incl),
    )
}

/// Disjoint union.
pub fn disjoint_union(x: &SimplicialSet, y: &SimplicialSet) -> (SimplicialSet, SimplicialMap, SimplicialMap) {
    glue(x, |_| None, y)
}

fn collapsed_vertex(point: usize, d: usize) -> Simplex {
    Simplex { word: (0..d).rev().collect(), base: SimplexId::new(0, point) }
}

/// Collapse each of the given pairwise disjoint subcomplexes (sets of
/// nondegenerate simplices closed under faces) to its own point. The new
/// points are the first vertices, labelled `*0`, `*1`, ….
pub fn collapse(x: &SimplicialSet, subs: &[BTreeSet<SimplexId>]) -> Result<(SimplicialSet, SimplicialMap)> {
    let names: Vec<String> = (0..subs.len()).map(|k| format!("*{k}")).collect();
    collapse_named(x, subs, &names)
}

/// [`collapse`] with chosen labels for the new points.
pub fn collapse_named(
    x: &SimplicialSet,
    subs: &[BTreeSet<SimplexId>],
    names: &[String],
) -> Result<(SimplicialSet, SimplicialMap)> {
    if names.len() != subs.len() {
        return invalid("one label per collapsed subcomplex");
    }
    for (k, s) in subs.iter().enumerate() {
        for id in s {
            if !x.contains(*id) {
                return invalid(format!("{id} is not a simplex"));
            }
            if id.dim > 0 && x.faces_of(*id).iter().any(|f| !s.contains(&f.base)) {
                return invalid(format!("collapsed set {k} is not a subcomplex"));
            }
            if subs[..k].iter().any(|t| t.contains(id)) {
                return invalid("collapsed subcomplexes overlap");
            }
        }
    }
    let mut points = SimplicialSet::empty();
    for name in names {
        points.push_vertex(name.clone());
    }
    let points = points.seal();
    let (p, phi, _) = glue(
        x,
        |id| subs.iter().position(|s| s.contains(&id)).map(|k| collapsed_vertex(k, id.dim)),
        &points,
    );
    Ok((p, phi))
}

/// Quotient by a congruence given as a normal-form function on simplices
/// (`nf(s)` is the chosen representative of the class of `s`). The quotient
/// is the set of fixed points; closure under faces and degeneracies is
/// checked first.
pub fn quotient_by(x: &SimplicialSet, nf: impl Fn(&Simplex) -> Simplex) -> Result<(SimplicialSet, SimplicialMap)> {
    for id in x.all_ids() {
        let s = Simplex::nondeg(id);
        let n = nf(&s);
        if n.dim() != id.dim || nf(&n) != n {
            return Err(Error::NotCongruence(format!("normal form is not idempotent at {}", x.describe(&s))));
        }
        for j in 0..=id.dim {
            if nf(&s.degenerate(&[j])) != n.degenerate(&[j]) {
                return Err(Error::NotCongruence(format!("s{j} breaks the relation at {}", x.describe(&s))));
            }
        }
        if id.dim > 0 {
            for i in 0..=id.dim {
                if nf(&x.face(&s, i)) != nf(&x.face(&n, i)) {
                    return Err(Error::NotCongruence(format!("d{i} breaks the relation at {}", x.describe(&s))));
                }
            }
        }
    }
    let mut q = SimplicialSet::empty();
    let mut new_id: HashMap<SimplexId, SimplexId> = HashMap::new();
    for id in x.all_ids() {
        let s = Simplex::nondeg(id);
        if nf(&s) != s {
            continue;
        }
        let nid = if id.dim == 0 {
            SimplexId::new(0, q.push_vertex(x.label(id.idx)))
        } else {
            let faces = (0..=id.dim)
                .map(|i| {
                    let f = nf(&x.face(&s, i));
                    Simplex { word: f.word.clone(), base: new_id[&f.base] }
                })
                .collect();
            q.push(faces)?
        };
        new_id.insert(id, nid);
    }
    let q = q.seal();
    let assign: Vec<Vec<Simplex>> = (0..x.counts().len())
        .map(|d| {
            x.ids(d)
                .map(|id| {
                    let f = nf(&Simplex::nondeg(id));
                    Simplex { word: f.word.clone(), base: new_id[&f.base] }
                })
                .collect()
        })
        .collect();
    let map = SimplicialMap::new_unchecked(x.clone(), q.clone(), assign);
    Ok((q, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset(names: &[&str], lt: &[(usize, usize)]) -> FinitePoset {
        FinitePoset::from_relations(names.iter().map(|s| s.to_string()).collect(), lt).unwrap()
    }

    #[test]
    fn family_counts() {
        assert_eq!(standard(2).total(), 7);
        let h = simplex_family(SimplexKind::Horn, 2, Some(1)).unwrap();
        assert_eq!(h.counts(), vec![3, 2]);
        let sp = simplex_family(SimplexKind::Spine, 3, None).unwrap();
        assert_eq!(sp.counts(), vec![4, 3]);
        assert_eq!(simplex_family(SimplexKind::Boundary, 2, None).unwrap().counts(), vec![3, 3]);
        assert!(simplex_family(SimplexKind::Horn, 2, Some(3)).is_err());
        assert!(simplex_family(SimplexKind::Standard, 2, Some(0)).is_err());
    }

    #[test]
    fn nerve_examples() {
        let v = poset(&["ab", "aa", "bb"], &[(0, 1), (0, 2)]);
        assert_eq!(nerve(&v).counts(), vec![3, 2]);
        assert_eq!(nerve(&FinitePoset::chain(3)).counts(), standard(3).counts());
        let grid = FinitePoset::chain(1).product(&FinitePoset::chain(1));
        assert_eq!(nerve(&grid).total(), 11);
    }

    #[test]
    fn product_counts() {
        let p = product(&standard(1), &standard(1));
        assert_eq!(p.set.total(), 11);
        p.set.validate().unwrap();
        p.pr1.validate().unwrap();
        p.pr2.validate().unwrap();
        let p = product(&standard(2), &standard(1));
        assert_eq!(p.set.count(3), 3);
        assert_eq!(product(&standard(3), &standard(0)).set.counts(), standard(3).counts());
    }

    #[test]
    fn product_pair_normalises() {
        let p = product(&standard(1), &standard(1));
        let a = Simplex::vertex(0).degenerate(&[0]);
        let b = Simplex::nondeg(SimplexId::new(1, 0));
        let s = p.pair(&a, &b);
        assert!(!s.is_degenerate());
        let s2 = p.pair(&a.degenerate(&[1]), &b.degenerate(&[1]));
        assert_eq!(s2, s.degenerate(&[1]));
    }

    #[test]
    fn join_of_simplices() {
        let j = join(&standard(1), &standard(0));
        assert_eq!(j.set.counts(), standard(2).counts());
        j.set.validate().unwrap();
        let j = join(&standard(1), &opposite(&standard(1)));
        assert_eq!(j.set.counts(), standard(3).counts());
        j.set.validate().unwrap();
        let e = join(&SimplicialSet::empty(), &standard(2));
        assert_eq!(e.set.counts(), standard(2).counts());
    }

    #[test]
    fn pushout_of_edges_at_endpoint() {
        let pt = standard(0);
        let e = standard(1);
        let f = SimplicialMap::from_vertex_map(&pt, &e, &[1]).unwrap();
        let g = SimplicialMap::from_vertex_map(&pt, &e, &[0]).unwrap();
        let (p, ix, iy) = pushout(&f, &g).unwrap();
        assert_eq!(p.counts(), vec![3, 2]);
        ix.validate().unwrap();
        iy.validate().unwrap();
        assert!(f.then(&ix).unwrap().same_as(&g.then(&iy).unwrap()));
    }

    #[test]
    fn collapse_boundary_of_edge() {
        let e = standard(1);
        let sub: BTreeSet<SimplexId> = e.ids(0).collect();
        let (q, m) = collapse(&e, &[sub]).unwrap();
        assert_eq!(q.counts(), vec![1, 1]);
        q.validate().unwrap();
        m.validate().unwrap();
        let all: BTreeSet<SimplexId> = standard(2).all_ids().into_iter().collect();
        assert_eq!(collapse(&standard(2), &[all]).unwrap().0.counts(), vec![1]);
    }

    #[test]
    fn collapse_top_edge_of_tetrahedron() {
        let d3 = standard(3);
        let sub = d3.closure(&[d3.lookup_id(&[2, 3]).unwrap()]);
        let (q, m) = collapse(&d3, &[sub]).unwrap();
        assert_eq!(q.count(0), 3);
        q.validate().unwrap();
        m.validate().unwrap();
    }

    #[test]
    fn opposite_is_involutive() {
        let x = simplex_family(SimplexKind::Horn, 3, Some(1)).unwrap();
        assert_eq!(opposite(&opposite(&x)), x);
        opposite(&x).validate().unwrap();
    }
}
