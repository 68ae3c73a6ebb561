use super::hom::SimplexTable;
use super::map::SimplicialMap;
use super::set::SimplicialSet;
use super::simplex::{Simplex, SimplexId};
use std::collections::HashSet;

/// For each vertex, how many nondegenerate simplices of each dimension have
/// it at each position. Isomorphisms preserve this.
fn signature(x: &SimplicialSet) -> Vec<Vec<usize>> {
    let top = x.top_dim().unwrap_or(0);
    let width = (top + 1) * (top + 2) / 2;
    let mut sig = vec![vec![0usize; width]; x.count(0)];
    for d in 0..=top {
        for id in x.ids(d) {
            for (t, &v) in x.verts_of(id).iter().enumerate() {
                sig[v][d * (d + 1) / 2 + t] += 1;
            }
        }
    }
    sig
}

/// An isomorphism `X → Y` when one exists.
pub fn isomorphic(x: &SimplicialSet, y: &SimplicialSet) -> Option<SimplicialMap> {
    if x.counts() != y.counts() {
        return None;
    }
    let id = SimplicialMap::new_unchecked(x.clone(), y.clone(), identity_assign(x));
    if id.validate().is_ok() {
        return Some(id);
    }
    let (sx, sy) = (signature(x), signature(y));
    let table = SimplexTable::new(y, x.top_dim().unwrap_or(0));
    let order = x.all_ids();
    let mut assign: Vec<Vec<Option<Simplex>>> = x.counts().iter().map(|&c| vec![None; c]).collect();
    let mut used = HashSet::new();
    let mut ctx = Ctx { x, y, table: &table, sx: &sx, sy: &sy, order: &order };
    if ctx.go(0, &mut assign, &mut used) {
        let a = assign.into_iter().map(|l| l.into_iter().map(Option::unwrap).collect()).collect();
        Some(SimplicialMap::new_unchecked(x.clone(), y.clone(), a))
    } else {
        None
    }
}

fn identity_assign(x: &SimplicialSet) -> Vec<Vec<Simplex>> {
    x.counts().iter().enumerate()
        .map(|(d, &c)| (0..c).map(|i| Simplex::nondeg(SimplexId::new(d, i))).collect())
        .collect()
}

struct Ctx<'a> {
    x: &'a SimplicialSet,
    y: &'a SimplicialSet,
    table: &'a SimplexTable,
    sx: &'a [Vec<usize>],
    sy: &'a [Vec<usize>],
    order: &'a [SimplexId],
}

impl Ctx<'_> {
    fn go(&mut self, k: usize, assign: &mut Vec<Vec<Option<Simplex>>>, used: &mut HashSet<SimplexId>) -> bool {
        if k == self.order.len() {
            return true;
        }
        let id = self.order[k];
        let cands: Vec<Simplex> = if id.dim == 0 {
            self.y.ids(0).filter(|v| self.sy[v.idx] == self.sx[id.idx]).map(Simplex::nondeg).collect()
        } else {
            let faces: Vec<Simplex> = self
                .x
                .faces_of(id)
                .iter()
                .map(|f| {
                    let img = assign[f.base.dim][f.base.idx].as_ref().unwrap();
                    if f.word.is_empty() { img.clone() } else { self.y.act(&f.surjection(), img) }
                })
                .collect();
            self.table.with_faces(&faces).to_vec()
        };
        for c in cands {
            if c.is_degenerate() || used.contains(&c.base) {
                continue;
            }
            used.insert(c.base);
            assign[id.dim][id.idx] = Some(c.clone());
            if self.go(k + 1, assign, used) {
                return true;
            }
            assign[id.dim][id.idx] = None;
            used.remove(&c.base);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::super::construct::{join, nerve, product, simplex_family, standard, SimplexKind};
    use super::super::poset::FinitePoset;
    use super::*;

    #[test]
    fn examples() {
        assert!(isomorphic(&standard(2), &join(&standard(1), &standard(0)).set).is_some());
        let b = simplex_family(SimplexKind::Boundary, 2, None).unwrap();
        assert!(isomorphic(&standard(1), &b).is_none());
        let grid = nerve(&FinitePoset::chain(1).product(&FinitePoset::chain(1)));
        let sq = product(&standard(1), &standard(1)).set;
        let f = isomorphic(&grid, &sq).unwrap();
        assert!(f.is_isomorphism());
        f.validate().unwrap();
    }

    #[test]
    fn distinct_horns_are_distinguished() {
        let h = simplex_family(SimplexKind::Horn, 3, Some(1)).unwrap();
        let h0 = simplex_family(SimplexKind::Horn, 3, Some(0)).unwrap();
        // both contain every edge of the tetrahedron, whose order admits no symmetry
        assert!(isomorphic(&h, &h0).is_none());
        assert!(isomorphic(&h, &h).is_some());
        let b = simplex_family(SimplexKind::Boundary, 2, None).unwrap();
        let sp = simplex_family(SimplexKind::Spine, 3, None).unwrap();
        assert!(isomorphic(&b, &sp).is_none());
    }
}
