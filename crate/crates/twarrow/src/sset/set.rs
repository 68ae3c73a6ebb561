use super::ordmap;
use super::simplex::{Simplex, SimplexId};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug, Default)]
struct Inner {
    // faces[d][idx] lists d_0 .. d_d of a nondegenerate d-simplex; empty for d = 0
    faces: Vec<Vec<Vec<Simplex>>>,
    // vertex sequence of each nondegenerate simplex
    verts: Vec<Vec<Vec<usize>>>,
    labels: Vec<String>,
    // present when nondegenerate simplices are determined by their vertex
    // sequences and those sequences never repeat a vertex
    seq_index: Option<HashMap<Vec<usize>, SimplexId>>,
}

/// A finite simplicial set stored as nondegenerate simplices with a face table.
/// Cloning is cheap; the data is shared and immutable once sealed.
#[derive(Clone, Debug, Default)]
pub struct SimplicialSet {
    inner: Arc<Inner>,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.faces == other.inner.faces && self.inner.labels == other.inner.labels)
    }
}

impl Eq for SimplicialSet {}

impl SimplicialSet {
    pub fn empty() -> Self {
        SimplicialSet::default()
    }

    fn inner_mut(&mut self) -> &mut Inner {
        Arc::make_mut(&mut self.inner)
    }

    pub(crate) fn push_vertex(&mut self, label: impl Into<String>) -> usize {
        let inner = self.inner_mut();
        if inner.faces.is_empty() {
            inner.faces.push(Vec::new());
            inner.verts.push(Vec::new());
        }
        let idx = inner.faces[0].len();
        inner.faces[0].push(Vec::new());
        inner.verts[0].push(vec![idx]);
        inner.labels.push(label.into());
        inner.seq_index = None;
        idx
    }

    /// Append a nondegenerate simplex of dimension `faces.len() - 1 ≥ 1`. All
    /// faces must already exist.
    pub(crate) fn push(&mut self, faces: Vec<Simplex>) -> Result<SimplexId> {
        let d = faces.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
            Error::Malformed("a positive-dimensional simplex needs at least two faces".into())
        })?;
        for f in &faces {
            if f.dim() != d - 1 || !f.is_normal() || !self.contains(f.base) {
                return Err(Error::Malformed(format!("bad face {f} for a {d}-simplex")));
            }
        }
        let mut vs = Vec::with_capacity(d + 1);
        let lower = self.vertices(&faces[d]);
        vs.extend_from_slice(&lower);
        vs.push(*self.vertices(&faces[0]).last().unwrap());
        let inner = self.inner_mut();
        while inner.faces.len() <= d {
            inner.faces.push(Vec::new());
            inner.verts.push(Vec::new());
        }
        let idx = inner.faces[d].len();
        inner.faces[d].push(faces);
        inner.verts[d].push(vs);
        inner.seq_index = None;
        Ok(SimplexId::new(d, idx))
    }

    /// Finish construction: drop empty top dimensions and build the vertex
    /// sequence index when it applies.
    pub(crate) fn seal(mut self) -> Self {
        let inner = self.inner_mut();
        while inner.faces.last().is_some_and(|l| l.is_empty()) {
            inner.faces.pop();
            inner.verts.pop();
        }
        let mut index = HashMap::new();
        let mut ok = true;
        'outer: for (d, level) in inner.verts.iter().enumerate() {
            for (idx, vs) in level.iter().enumerate() {
                let mut sorted = vs.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != vs.len() || index.insert(vs.clone(), SimplexId::new(d, idx)).is_some() {
                    ok = false;
                    break 'outer;
                }
            }
        }
        inner.seq_index = ok.then_some(index);
        self
    }

    /// Highest dimension with a nondegenerate simplex, or `None` when empty.
    pub fn top_dim(&self) -> Option<usize> {
        self.inner.faces.len().checked_sub(1)
    }

    pub fn count(&self, d: usize) -> usize {
        self.inner.faces.get(d).map_or(0, |l| l.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.inner.faces.iter().map(|l| l.len()).collect()
    }

    pub fn total(&self) -> usize {
        self.inner.faces.iter().map(|l| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        id.idx < self.count(id.dim)
    }

    pub fn ids(&self, d: usize) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.count(d)).map(move |i| SimplexId::new(d, i))
    }

    /// All nondegenerate simplices, dimension-major.
    pub fn all_ids(&self) -> Vec<SimplexId> {
        (0..self.inner.faces.len()).flat_map(|d| self.ids(d)).collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.inner.labels[v]
    }

    pub fn faces_of(&self, id: SimplexId) -> &[Simplex] {
        &self.inner.faces[id.dim][id.idx]
    }

    pub fn verts_of(&self, id: SimplexId) -> &[usize] {
        &self.inner.verts[id.dim][id.idx]
    }

    /// Vertex sequence of any simplex.
    pub fn vertices(&self, s: &Simplex) -> Vec<usize> {
        let vs = self.verts_of(s.base);
        s.surjection().into_iter().map(|t| vs[t]).collect()
    }

    pub fn is_vertex_determined(&self) -> bool {
        self.inner.seq_index.is_some()
    }

    /// Simplex with the given vertex sequence (repeats allowed) in a
    /// vertex-determined set.
    pub fn lookup(&self, seq: &[usize]) -> Option<Simplex> {
        let index = self.inner.seq_index.as_ref()?;
        let mut distinct: Vec<usize> = Vec::with_capacity(seq.len());
        let mut eta = Vec::with_capacity(seq.len());
        for &v in seq {
            if distinct.last() != Some(&v) {
                distinct.push(v);
            }
            eta.push(distinct.len() - 1);
        }
        let base = *index.get(&distinct)?;
        Some(Simplex::from_surjection(&eta, base))
    }

    pub fn lookup_id(&self, seq: &[usize]) -> Option<SimplexId> {
        self.inner.seq_index.as_ref()?.get(seq).copied()
    }

    /// `θ^* s` for a monotone `θ : [m] → [s.dim]`, in normal form.
    pub fn act(&self, theta: &[usize], s: &Simplex) -> Simplex {
        debug_assert!(ordmap::is_monotone(theta));
        let c = ordmap::compose(&s.surjection(), theta);
        let (epi, mono) = ordmap::epi_mono(&c);
        let y = self.restrict(s.base, &mono);
        let eta = ordmap::compose(&y.surjection(), &epi);
        Simplex::from_surjection(&eta, y.base)
    }

    /// `ι^* x` for a strictly increasing `ι` into a nondegenerate `x`.
    fn restrict(&self, x: SimplexId, iota: &[usize]) -> Simplex {
        if iota.len() == x.dim + 1 {
            return Simplex::nondeg(x);
        }
        let m = (0..=x.dim).find(|t| iota.binary_search(t).is_err()).unwrap();
        let lowered: Vec<usize> = iota.iter().map(|&t| if t < m { t } else { t - 1 }).collect();
        let face = &self.inner.faces[x.dim][x.idx][m];
        self.act(&lowered, face)
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        let d = s.dim();
        self.act(&ordmap::coface(d, i), s)
    }

    pub fn degeneracy(&self, s: &Simplex, j: usize) -> Simplex {
        s.degenerate(&[j])
    }

    /// Every simplex of dimension `d`, degenerate ones included, in order of
    /// (base, surjection).
    pub fn all_simplices(&self, d: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..=d.min(self.top_dim().unwrap_or(0)) {
            if self.count(k) == 0 {
                continue;
            }
            let surj = ordmap::surjections(d, k);
            for id in self.ids(k) {
                for eta in &surj {
                    out.push(Simplex::from_surjection(eta, id));
                }
            }
        }
        out
    }

    /// Build from labels and a face table (`faces[d][k]` lists the faces of
    /// the `k`-th nondegenerate `d`-simplex; `faces[0]` is ignored), checking
    /// the simplicial identities.
    pub fn from_face_table(labels: Vec<String>, faces: Vec<Vec<Vec<Simplex>>>) -> Result<Self> {
        let mut out = SimplicialSet::empty();
        for l in labels {
            out.push_vertex(l);
        }
        for (d, level) in faces.into_iter().enumerate().skip(1) {
            for fs in level {
                if fs.len() != d + 1 {
                    return Err(Error::Malformed(format!("a {d}-simplex needs {} faces", d + 1)));
                }
                let id = out.push(fs)?;
                if id.dim != d {
                    return Err(Error::Malformed(format!("simplex listed in dimension {d} has dimension {}", id.dim)));
                }
            }
        }
        let out = out.seal();
        out.validate()?;
        Ok(out)
    }

    /// Check that the face table satisfies `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn validate(&self) -> Result<()> {
        for d in 2..self.inner.faces.len() {
            for id in self.ids(d) {
                let fs = self.faces_of(id);
                for j in 0..=d {
                    for i in 0..j {
                        let l = self.face(&fs[j], i);
                        let r = self.face(&fs[i], j - 1);
                        if l != r {
                            return Err(Error::Malformed(format!(
                                "simplicial identity d{i}d{j} fails on {id}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Human-readable name of a simplex from its vertex labels.
    pub fn describe(&self, s: &Simplex) -> String {
        let vs = self.vertices(s);
        let parts: Vec<&str> = vs.iter().map(|&v| self.label(v)).collect();
        format!("({})", parts.join(","))
    }

    /// Subcomplex spanned by nondegenerate simplices selected by `keep`, which
    /// must be closed under faces. Returns the subcomplex and the old id of
    /// each new simplex.
    pub fn subcomplex(&self, keep: impl Fn(SimplexId) -> bool) -> Result<(SimplicialSet, Vec<Vec<SimplexId>>)> {
        let mut out = SimplicialSet::empty();
        let mut new_id: HashMap<SimplexId, SimplexId> = HashMap::new();
        let mut back: Vec<Vec<SimplexId>> = Vec::new();
        for d in 0..self.inner.faces.len() {
            back.push(Vec::new());
            for id in self.ids(d) {
                if !keep(id) {
                    continue;
                }
                let nid = if d == 0 {
                    SimplexId::new(0, out.push_vertex(self.label(id.idx)))
                } else {
                    let mut fs = Vec::with_capacity(d + 1);
                    for f in self.faces_of(id) {
                        let b = new_id.get(&f.base).ok_or_else(|| {
                            Error::Invalid(format!("selection is not closed under faces at {id}"))
                        })?;
                        fs.push(Simplex { word: f.word.clone(), base: *b });
                    }
                    out.push(fs)?
                };
                new_id.insert(id, nid);
                back[d].push(id);
            }
        }
        while back.last().is_some_and(|l| l.is_empty()) {
            back.pop();
        }
        Ok((out.seal(), back))
    }

    /// The `k`-skeleton.
    pub fn skeleton(&self, k: usize) -> SimplicialSet {
        self.subcomplex(|id| id.dim <= k).expect("skeleta are closed under faces").0
    }

    /// Set of nondegenerate simplices of `self` lying in the subcomplex
    /// generated by `gens`.
    pub fn closure(&self, gens: &[SimplexId]) -> std::collections::BTreeSet<SimplexId> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack: Vec<SimplexId> = gens.to_vec();
        while let Some(id) = stack.pop() {
            if !seen.insert(id) {
                continue;
            }
            if id.dim > 0 {
                for f in self.faces_of(id) {
                    stack.push(f.base);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::super::construct::standard;
    use super::*;

    #[test]
    fn faces_of_degenerate_simplices() {
        let d1 = standard(1);
        let edge = Simplex::nondeg(SimplexId::new(1, 0));
        let s0 = edge.degenerate(&[0]);
        // d_0 s_0 = d_1 s_0 = id
        assert_eq!(d1.face(&s0, 0), edge);
        assert_eq!(d1.face(&s0, 1), edge);
        // d_2 s_0 x = s_0 d_1 x
        assert_eq!(d1.face(&s0, 2), Simplex::vertex(0).degenerate(&[0]));
        assert_eq!(d1.vertices(&s0), vec![0, 0, 1]);
    }

    #[test]
    fn act_matches_vertex_restriction() {
        let d3 = standard(3);
        let top = Simplex::nondeg(SimplexId::new(3, 0));
        for theta in ordmap::monotone_maps(3, 3) {
            let s = d3.act(&theta, &top);
            assert_eq!(d3.vertices(&s), theta);
        }
    }
}
