//! Exhaustive enumeration of simplicial maps and of extensions of partial maps.

use super::map::SimplicialMap;
use super::set::SimplicialSet;
use super::simplex::{Simplex, SimplexId};
use std::collections::HashMap;

/// Every simplex of a target up to a dimension, keyed by its face tuple.
#[derive(Clone, Debug)]
pub struct SimplexTable {
    vertices: Vec<Simplex>,
    by_faces: Vec<HashMap<Vec<Simplex>, Vec<Simplex>>>,
}

impl SimplexTable {
    pub fn new(y: &SimplicialSet, max_dim: usize) -> Self {
        let vertices = y.ids(0).map(Simplex::nondeg).collect();
        let mut by_faces = vec![HashMap::new()];
        for d in 1..=max_dim {
            let mut m: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
            for s in y.all_simplices(d) {
                let key = (0..=d).map(|i| y.face(&s, i)).collect();
                m.entry(key).or_default().push(s);
            }
            by_faces.push(m);
        }
        SimplexTable { vertices, by_faces }
    }

    pub fn max_dim(&self) -> usize {
        self.by_faces.len() - 1
    }

    /// Simplices with exactly the given faces.
    pub fn with_faces(&self, faces: &[Simplex]) -> &[Simplex] {
        let d = faces.len() - 1;
        self.by_faces[d].get(faces).map_or(&[], |v| v.as_slice())
    }

    pub fn vertices(&self) -> &[Simplex] {
        &self.vertices
    }
}

/// Search for maps `X → Y` extending `fixed` (images of some nondegenerate
/// simplices of `X`, assumed face-compatible among themselves) whose image of
/// each free nondegenerate simplex passes `filter`. Free simplices are
/// assigned in order of dimension, then id. Stops after `limit` solutions.
pub fn extensions(
    x: &SimplicialSet,
    y: &SimplicialSet,
    table: &SimplexTable,
    fixed: &HashMap<SimplexId, Simplex>,
    filter: &dyn Fn(SimplexId, &Simplex) -> bool,
    limit: Option<usize>,
) -> Vec<SimplicialMap> {
    let mut assign: Vec<Vec<Option<Simplex>>> = x.counts().iter().map(|&c| vec![None; c]).collect();
    for (id, s) in fixed {
        assign[id.dim][id.idx] = Some(s.clone());
    }
    let free: Vec<SimplexId> = x.all_ids().into_iter().filter(|id| !fixed.contains_key(id)).collect();
    let mut out = Vec::new();
    let mut st = Search { x, y, table, filter, free: &free, limit, out: &mut out };
    st.go(0, &mut assign);
    out
}

struct Search<'a> {
    x: &'a SimplicialSet,
    y: &'a SimplicialSet,
    table: &'a SimplexTable,
    filter: &'a dyn Fn(SimplexId, &Simplex) -> bool,
    free: &'a [SimplexId],
    limit: Option<usize>,
    out: &'a mut Vec<SimplicialMap>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn go(&mut self, k: usize, assign: &mut Vec<Vec<Option<Simplex>>>) {
        if self.done() {
            return;
        }
        if k == self.free.len() {
            let a = assign.iter().map(|l| l.iter().map(|s| s.clone().unwrap()).collect()).collect();
            self.out.push(SimplicialMap::new_unchecked(self.x.clone(), self.y.clone(), a));
            return;
        }
        let id = self.free[k];
        let cands: Vec<Simplex> = if id.dim == 0 {
            self.table.vertices().to_vec()
        } else {
            if id.dim > self.table.max_dim() {
                return;
            }
            let faces: Vec<Simplex> = self.x.faces_of(id).iter().map(|f| image(self.y, assign, f)).collect();
            self.table.with_faces(&faces).to_vec()
        };
        for c in cands {
            if !(self.filter)(id, &c) {
                continue;
            }
            assign[id.dim][id.idx] = Some(c);
            self.go(k + 1, assign);
            assign[id.dim][id.idx] = None;
            if self.done() {
                return;
            }
        }
    }
}

fn image(y: &SimplicialSet, assign: &[Vec<Option<Simplex>>], f: &Simplex) -> Simplex {
    let img = assign[f.base.dim][f.base.idx].as_ref().expect("faces are assigned first");
    if f.word.is_empty() {
        img.clone()
    } else {
        y.act(&f.surjection(), img)
    }
}

/// All simplicial maps `X → Y`.
pub fn hom_enum(x: &SimplicialSet, y: &SimplicialSet) -> Vec<SimplicialMap> {
    let table = SimplexTable::new(y, x.top_dim().unwrap_or(0));
    extensions(x, y, &table, &HashMap::new(), &|_, _| true, None)
}

#[cfg(test)]
mod tests {
    use super::super::construct::{nerve, simplex_family, standard, SimplexKind};
    use super::super::poset::FinitePoset;
    use super::*;

    #[test]
    fn small_hom_sets() {
        assert_eq!(hom_enum(&standard(0), &standard(3)).len(), 4);
        assert_eq!(hom_enum(&standard(1), &standard(1)).len(), 3);
        let b = simplex_family(SimplexKind::Boundary, 1, None).unwrap();
        assert_eq!(hom_enum(&standard(1), &b).len(), 2);
        assert_eq!(hom_enum(&standard(2), &standard(2)).len(), 10);
    }

    #[test]
    fn maps_into_nerves_are_monotone_maps() {
        for n in 0..=4 {
            for p in FinitePoset::natural_posets(n) {
                let np = nerve(&p);
                for m in 0..=3 {
                    assert_eq!(hom_enum(&standard(m), &np).len(), p.count_monotone(m));
                }
            }
        }
    }

    #[test]
    fn enumerated_maps_validate() {
        let h = simplex_family(SimplexKind::Horn, 2, Some(1)).unwrap();
        for f in hom_enum(&h, &standard(2)) {
            f.validate().unwrap();
        }
    }
}
