//! Lifting problems solved by exhaustive search, and dimension-bounded tests
//! for inner, Cartesian and trivial fibrations.

use crate::error::{invalid, Error, Result};
use crate::scaled::{MarkedSet, ScaledSet};
use crate::sset::{
    extensions, simplex_subcomplex, standard, Simplex, SimplexId, SimplexTable, SimplicialMap, SimplicialSet,
};
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// A commutative square `A → X`, `B → Y` over `i : A → B` and `p : X → Y`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub inclusion: SimplicialMap,
    pub p: SimplicialMap,
    pub top: SimplicialMap,
    pub bottom: SimplicialMap,
}

impl LiftingProblem {
    pub fn new(inclusion: SimplicialMap, p: SimplicialMap, top: SimplicialMap, bottom: SimplicialMap) -> Result<Self> {
        if !inclusion.is_mono() {
            return invalid("the left map must be a monomorphism");
        }
        if inclusion.source() != top.source()
            || inclusion.target() != bottom.source()
            || p.source() != top.target()
            || p.target() != bottom.target()
        {
            return invalid("the square's maps do not match up");
        }
        let prob = LiftingProblem { inclusion, p, top, bottom };
        for id in prob.top.source().all_ids() {
            let s = Simplex::nondeg(id);
            if prob.p.apply(&prob.top.apply(&s)) != prob.bottom.apply(&prob.inclusion.apply(&s)) {
                return invalid(format!("the square does not commute at {}", prob.top.source().describe(&s)));
            }
        }
        Ok(prob)
    }
}

/// A diagonal `B → X` for the square, if one exists.
pub fn solve_lift(prob: &LiftingProblem) -> Option<SimplicialMap> {
    let b = prob.inclusion.target();
    let x = prob.p.source();
    let table = SimplexTable::new(x, b.top_dim().unwrap_or(0));
    let mut fixed = HashMap::new();
    for id in prob.top.source().all_ids() {
        fixed.insert(prob.inclusion.image(id).base, prob.top.image(id).clone());
    }
    let filter = |id: SimplexId, s: &Simplex| prob.p.apply(s) == *prob.bottom.image(id);
    extensions(b, x, &table, &fixed, &filter, Some(1)).pop()
}

/// A failed square, in a form that can be reported and re-solved.
#[derive(Clone, Debug)]
pub struct Counterexample {
    /// `Λⁿᵢ ⊂ Δⁿ` or `∂Δⁿ ⊂ Δⁿ`.
    pub shape: String,
    pub problem: LiftingProblem,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleSummary {
    pub shape: String,
    pub top: Vec<String>,
    pub bottom: String,
}

impl Counterexample {
    pub fn summary(&self) -> CounterexampleSummary {
        let top = self.problem.top.source();
        let x = self.problem.p.source();
        let mut faces = Vec::new();
        for d in 0..top.counts().len() {
            for id in top.ids(d) {
                faces.push(format!("{} ↦ {}", top.describe(&Simplex::nondeg(id)), x.describe(self.problem.top.image(id))));
            }
        }
        let b = self.problem.bottom.source();
        let topid = SimplexId::new(b.top_dim().unwrap_or(0), 0);
        CounterexampleSummary {
            shape: self.shape.clone(),
            top: faces,
            bottom: self.problem.p.target().describe(self.problem.bottom.image(topid)),
        }
    }
}

/// Outcome of a bounded fibration test.
#[derive(Clone, Debug)]
pub struct FibrationReport {
    pub property: String,
    pub max_dim: usize,
    pub squares: usize,
    pub counterexample: Option<Counterexample>,
    /// Reason for a failure not witnessed by a square.
    pub note: Option<String>,
}

impl FibrationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.note.is_none()
    }

    fn pass(property: &str, max_dim: usize, squares: usize) -> Self {
        FibrationReport { property: property.into(), max_dim, squares, counterexample: None, note: None }
    }

    /// Both must pass; the first failure is kept.
    fn and(mut self, other: FibrationReport) -> Self {
        self.squares += other.squares;
        if self.passed() {
            self.counterexample = other.counterexample;
            self.note = other.note;
        }
        self
    }
}

/// The map `Δⁿ → Y` classifying an `n`-simplex.
pub fn simplex_map(y: &SimplicialSet, s: &Simplex) -> SimplicialMap {
    let n = s.dim();
    let d = standard(n);
    let assign: Vec<Vec<Simplex>> = (0..=n)
        .map(|k| d.ids(k).map(|id| y.act(d.verts_of(id), s)).collect())
        .collect();
    SimplicialMap::new(d, y.clone(), assign).expect("faces of a simplex are compatible")
}

/// `K ⊂ Δⁿ` spanned by the faces `d_j`, `j ∈ faces`, its inclusion, and the
/// ids of the listed faces in `K`.
fn face_union(n: usize, faces: &[usize]) -> Result<(SimplicialSet, SimplicialMap, Vec<SimplexId>)> {
    let gens: Vec<Vec<usize>> = faces.iter().map(|&j| (0..=n).filter(|&v| v != j).collect()).collect();
    let k = if n == 0 { SimplicialSet::empty() } else { simplex_subcomplex(n, &gens)? };
    let vmap: Vec<usize> = (0..k.count(0)).collect();
    let incl = SimplicialMap::from_vertex_map(&k, &standard(n), &vmap)?;
    let ids = gens
        .iter()
        .map(|g| k.lookup_id(g).ok_or_else(|| Error::Malformed(format!("missing face {g:?}"))))
        .collect::<Result<_>>()?;
    Ok((k, incl, ids))
}

/// Simplices by face tuple restricted to `faces`, with precomputed images.
struct FaceIndex {
    // (faces at the chosen indices, image under p) present in X
    x: HashSet<(Vec<Simplex>, Simplex)>,
    // faces at the chosen indices ↦ simplices of Y
    y: HashMap<Vec<Simplex>, Vec<Simplex>>,
}

impl FaceIndex {
    fn new(p: &SimplicialMap, n: usize, faces: &[usize]) -> Self {
        let (x, y) = (p.source(), p.target());
        let key = |z: &SimplicialSet, s: &Simplex| -> Vec<Simplex> { faces.iter().map(|&j| z.face(s, j)).collect() };
        let mut xi = HashSet::new();
        for s in x.all_simplices(n) {
            xi.insert((if n == 0 { Vec::new() } else { key(x, &s) }, p.apply(&s)));
        }
        let mut yi: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
        for s in y.all_simplices(n) {
            yi.entry(if n == 0 { Vec::new() } else { key(y, &s) }).or_default().push(s);
        }
        FaceIndex { x: xi, y: yi }
    }
}

/// Right lifting property against `K ⊂ Δⁿ` (`K` the union of the faces
/// listed), over every square whose top passes `keep`.
fn rlp_faces(
    p: &SimplicialMap,
    n: usize,
    faces: &[usize],
    shape: &str,
    keep: &dyn Fn(&SimplicialMap) -> bool,
) -> Result<(usize, Option<Counterexample>)> {
    let (k, incl, ids) = face_union(n, faces)?;
    let x = p.source();
    let table = SimplexTable::new(x, n.saturating_sub(1));
    let index = FaceIndex::new(p, n, faces);
    let tops = extensions(&k, x, &table, &HashMap::new(), &|_, _| true, None);
    let mut squares = 0;
    for top in tops {
        if !keep(&top) {
            continue;
        }
        let xs: Vec<Simplex> = ids.iter().map(|&id| top.image(id).clone()).collect();
        let ys: Vec<Simplex> = xs.iter().map(|s| p.apply(s)).collect();
        let empty = Vec::new();
        let bottoms = index.y.get(&ys).unwrap_or(&empty);
        for sigma in bottoms {
            squares += 1;
            if !index.x.contains(&(xs.clone(), sigma.clone())) {
                let bottom = simplex_map(p.target(), sigma);
                let problem = LiftingProblem::new(incl.clone(), p.clone(), top.clone(), bottom)?;
                return Ok((squares, Some(Counterexample { shape: shape.into(), problem })));
            }
        }
    }
    Ok((squares, None))
}

/// RLP against `Λⁿᵢ ⊂ Δⁿ` for `0 < i < n ≤ max_dim`.
pub fn inner_fibration(p: &SimplicialMap, max_dim: usize) -> Result<FibrationReport> {
    let mut report = FibrationReport::pass("inner fibration", max_dim, 0);
    for n in 2..=max_dim {
        for i in 1..n {
            let faces: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
            let (sq, cex) = rlp_faces(p, n, &faces, &format!("Λ^{n}_{i}"), &|_| true)?;
            report.squares += sq;
            if cex.is_some() {
                report.counterexample = cex;
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// RLP against `Λⁿₙ ⊂ Δⁿ` (`2 ≤ n ≤ max_dim`) for squares whose last edge
/// `Δ^{n−1,n}` goes to `e`.
pub fn cartesian_edge(p: &SimplicialMap, e: SimplexId, max_dim: usize) -> Result<FibrationReport> {
    if e.dim != 1 || !p.source().contains(e) {
        return invalid(format!("{e} is not an edge"));
    }
    let mut report = FibrationReport::pass(&format!("Cartesian edge {e}"), max_dim, 0);
    let target = Simplex::nondeg(e);
    for n in 2..=max_dim {
        let faces: Vec<usize> = (0..n).collect();
        let (k, _, _) = face_union(n, &faces)?;
        let last = k.lookup_id(&[n - 1, n]).expect("the last edge lies in the horn");
        let keep = |top: &SimplicialMap| *top.image(last) == target;
        let (sq, cex) = rlp_faces(p, n, &faces, &format!("Λ^{n}_{n}"), &keep)?;
        report.squares += sq;
        if cex.is_some() {
            report.counterexample = cex;
            return Ok(report);
        }
    }
    Ok(report)
}

/// Every vertex `x` and edge `f : a → p(x)` of the base has a marked edge
/// over `f` ending at `x`.
pub fn marked_lifts(p: &SimplicialMap, marked: &MarkedSet) -> FibrationReport {
    let (x, y) = (p.source(), p.target());
    let mut report = FibrationReport::pass("supply of marked edges", 1, 0);
    let mut ends: HashSet<(usize, Simplex)> = HashSet::new();
    for e in x.all_simplices(1) {
        if marked.is_decorated(&e) {
            ends.insert((x.vertices(&e)[1], p.apply(&e)));
        }
    }
    for v in x.ids(0) {
        let pv = p.image(v).base.idx;
        for f in y.all_simplices(1) {
            if y.vertices(&f)[1] != pv {
                continue;
            }
            report.squares += 1;
            if !ends.contains(&(v.idx, f.clone())) {
                report.note = Some(format!(
                    "no marked edge over {} ends at {}",
                    y.describe(&f),
                    x.label(v.idx)
                ));
                return report;
            }
        }
    }
    report
}

/// Every spine `Sp₃ → ℂ` extends to a fully thin 3-simplex.
pub fn spine_fillers(c: &ScaledSet) -> FibrationReport {
    let x = &c.base;
    let mut report = FibrationReport::pass("spine fillers", 3, 0);
    let edges = x.all_simplices(1);
    let mut tets: HashSet<Vec<Simplex>> = HashSet::new();
    for t in x.all_simplices(3) {
        let thin = (0..4).all(|j| c.is_decorated(&x.face(&t, j)));
        if thin {
            tets.insert([[0, 1], [1, 2], [2, 3]].iter().map(|e| x.act(e, &t)).collect());
        }
    }
    for a in &edges {
        for b in edges.iter().filter(|b| x.vertices(b)[0] == x.vertices(a)[1]) {
            for d in edges.iter().filter(|d| x.vertices(d)[0] == x.vertices(b)[1]) {
                report.squares += 1;
                if !tets.contains(&vec![a.clone(), b.clone(), d.clone()]) {
                    report.note =
                        Some(format!("spine {}, {}, {} has no thin filler", x.describe(a), x.describe(b), x.describe(d)));
                    return report;
                }
            }
        }
    }
    report
}

/// Inner fibration, marked edges Cartesian, and enough marked edges.
pub fn cartesian_fibration(p: &SimplicialMap, marked: &MarkedSet, max_dim: usize) -> Result<FibrationReport> {
    if marked.base != *p.source() {
        return invalid("the marking lives on a different set");
    }
    let mut report = inner_fibration(p, max_dim)?;
    report.property = "Cartesian fibration".into();
    if !report.passed() {
        return Ok(report);
    }
    for &e in marked.cells() {
        report = report.and(cartesian_edge(p, SimplexId::new(1, e), max_dim)?);
        if !report.passed() {
            return Ok(report);
        }
    }
    Ok(report.and(marked_lifts(p, marked)))
}

/// RLP against `∂Δⁿ ⊂ Δⁿ` for `n ≤ max_dim`.
pub fn trivial_fibration(p: &SimplicialMap, max_dim: usize) -> Result<FibrationReport> {
    let mut report = FibrationReport::pass("trivial fibration", max_dim, 0);
    for n in 0..=max_dim {
        let faces: Vec<usize> = if n == 0 { Vec::new() } else { (0..=n).collect() };
        let (sq, cex) = rlp_faces(p, n, &faces, &format!("∂Δ^{n}"), &|_| true)?;
        report.squares += sq;
        if cex.is_some() {
            report.counterexample = cex;
            return Ok(report);
        }
    }
    Ok(report)
}

/// The fibration test for `Tw(ℂ) → 𝒞 × 𝒞^op`, with the spine clause on `ℂ`.
pub fn tw_cartesian(c: &ScaledSet, max_dim: usize) -> Result<FibrationReport> {
    let t = crate::tw::tw(c, max_dim)?;
    let report = cartesian_fibration(&t.projection, &t.marked, max_dim)?;
    Ok(report.and(spine_fillers(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaled::{mark, Decoration};
    use crate::sset::{hom_enum, nerve, product, simplex_family, FinitePoset, SimplexKind};

    fn horn(n: usize, i: usize) -> SimplicialSet {
        simplex_family(SimplexKind::Horn, n, Some(i)).unwrap()
    }

    fn to_point(x: &SimplicialSet) -> SimplicialMap {
        SimplicialMap::from_vertex_map(x, &standard(0), &vec![0; x.count(0)]).unwrap()
    }

    #[test]
    fn lift_examples() {
        let h = horn(2, 1);
        let d2 = standard(2);
        let incl = SimplicialMap::from_vertex_map(&h, &d2, &[0, 1, 2]).unwrap();
        let id = SimplicialMap::identity(&d2);
        let prob = LiftingProblem::new(incl.clone(), id.clone(), incl.clone(), id.clone()).unwrap();
        assert!(solve_lift(&prob).unwrap().same_as(&id));

        let b = simplex_family(SimplexKind::Boundary, 1, None).unwrap();
        let e = standard(1);
        let incl = SimplicialMap::from_vertex_map(&b, &e, &[0, 1]).unwrap();
        let top = SimplicialMap::from_vertex_map(&b, &e, &[1, 0]).unwrap();
        let prob = LiftingProblem::new(incl, to_point(&e), top, to_point(&e)).unwrap();
        assert!(solve_lift(&prob).is_none());

        let p = nerve(&FinitePoset::chain(3));
        let h = horn(3, 2);
        let incl = SimplicialMap::from_vertex_map(&h, &standard(3), &[0, 1, 2, 3]).unwrap();
        let top = SimplicialMap::from_vertex_map(&h, &p, &[0, 1, 2, 3]).unwrap();
        let prob = LiftingProblem::new(incl, to_point(&p), top, to_point(&standard(3))).unwrap();
        let b = prob.inclusion.target().clone();
        let table = SimplexTable::new(&p, 3);
        let fixed: HashMap<SimplexId, Simplex> =
            h.all_ids().into_iter().map(|id| (prob.inclusion.image(id).base, prob.top.image(id).clone())).collect();
        assert_eq!(extensions(&b, &p, &table, &fixed, &|_, _| true, None).len(), 1);
        assert!(solve_lift(&prob).is_some());
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let b = simplex_family(SimplexKind::Boundary, 1, None).unwrap();
        let e = standard(1);
        let incl = SimplicialMap::from_vertex_map(&b, &e, &[0, 1]).unwrap();
        let top = SimplicialMap::from_vertex_map(&b, &e, &[0, 1]).unwrap();
        let bottom = SimplicialMap::from_vertex_map(&e, &e, &[0, 0]).unwrap();
        assert!(LiftingProblem::new(incl, SimplicialMap::identity(&e), top, bottom).is_err());
    }

    #[test]
    fn poset_maps_are_inner_fibrations() {
        for n in 1..=3 {
            for p in FinitePoset::natural_posets(n) {
                let x = nerve(&p);
                assert!(inner_fibration(&to_point(&x), 3).unwrap().passed());
            }
        }
    }

    #[test]
    fn horn_over_point_fails() {
        let h = horn(2, 1);
        let r = inner_fibration(&to_point(&h), 2).unwrap();
        let cex = r.counterexample.expect("missing composite");
        assert!(solve_lift(&cex.problem).is_none());
        assert_eq!(cex.shape, "Λ^2_1");
    }

    #[test]
    fn cartesian_edges_of_identity() {
        let x = nerve(&FinitePoset::chain(2));
        let id = SimplicialMap::identity(&x);
        for e in x.ids(1) {
            assert!(cartesian_edge(&id, e, 3).unwrap().passed());
        }
    }

    #[test]
    fn non_invertible_edge_over_point_is_not_cartesian() {
        let e = standard(1);
        let edge = e.lookup_id(&[0, 1]).unwrap();
        let r = cartesian_edge(&to_point(&e), edge, 2).unwrap();
        assert_eq!(r.counterexample.as_ref().unwrap().shape, "Λ^2_2");
        assert!(solve_lift(&r.counterexample.unwrap().problem).is_none());
        assert!(cartesian_edge(&SimplicialMap::identity(&e), edge, 3).unwrap().passed());
        assert!(cartesian_edge(&to_point(&e), SimplexId::new(1, 7), 2).is_err());
    }

    #[test]
    fn trivial_fibration_examples() {
        let x = nerve(&FinitePoset::chain(2));
        assert!(trivial_fibration(&SimplicialMap::identity(&x), 2).unwrap().passed());
        let r = trivial_fibration(&to_point(&standard(1)), 2).unwrap();
        let cex = r.counterexample.unwrap();
        assert_eq!(cex.shape, "∂Δ^1");
        assert!(solve_lift(&cex.problem).is_none());
    }

    #[test]
    fn flat_product_lacks_marked_lifts() {
        let pr = product(&standard(1), &standard(1));
        let flat = mark(&pr.set, Decoration::Flat).unwrap();
        let r = cartesian_fibration(&pr.pr1, &flat, 2).unwrap();
        assert!(!r.passed());
        assert!(r.note.unwrap().contains("no marked edge"));
        // horizontal edges are the Cartesian ones
        let horizontal: Vec<usize> =
            pr.set.ids(1).filter(|&e| pr.pr2.image(e).is_degenerate()).map(|e| e.idx).collect();
        let marked = mark(&pr.set, Decoration::Ids(horizontal)).unwrap();
        assert!(cartesian_fibration(&pr.pr1, &marked, 3).unwrap().passed());
        let sharp = mark(&pr.set, Decoration::Sharp).unwrap();
        assert!(!cartesian_fibration(&pr.pr1, &sharp, 2).unwrap().passed());
    }

    #[test]
    fn small_tw_is_cartesian() {
        for n in 0..=2 {
            let c = crate::scaled::scale(&standard(n), Decoration::Sharp).unwrap();
            assert!(tw_cartesian(&c, 3).unwrap().passed());
        }
        let square = FinitePoset::chain(1).product(&FinitePoset::chain(1));
        let c = crate::scaled::scale(&nerve(&square), Decoration::Sharp).unwrap();
        assert!(tw_cartesian(&c, 3).unwrap().passed());
    }

    #[test]
    fn fiber_projection_is_trivial() {
        let c = crate::scaled::scale(&standard(1), Decoration::Sharp).unwrap();
        let m = crate::tw::m_y(&c, 1, 2).unwrap();
        assert!(trivial_fibration(&m.pi, 2).unwrap().passed());
    }

    #[test]
    fn backtracking_agrees_with_enumeration() {
        let d2 = standard(2);
        let x = nerve(&FinitePoset::chain(2));
        for (n, i) in [(2, 0), (2, 1), (2, 2)] {
            let h = horn(n, i);
            let incl = SimplicialMap::from_vertex_map(&h, &d2, &[0, 1, 2]).unwrap();
            for top in hom_enum(&h, &x) {
                let p = to_point(&x);
                let prob = LiftingProblem::new(incl.clone(), p, top.clone(), to_point(&d2)).unwrap();
                let brute = hom_enum(&d2, &x).into_iter().any(|f| incl.then(&f).unwrap().same_as(&top));
                assert_eq!(solve_lift(&prob).is_some(), brute);
            }
        }
    }
}
