use super::set::SimplicialSet;
use super::simplex::{Simplex, SimplexId};
use crate::error::{Error, Result};
use std::collections::HashSet;

/// A map of simplicial sets, given by the image of each nondegenerate source
/// simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialSet,
    target: SimplicialSet,
    assign: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    /// Build and check face compatibility.
    pub fn new(source: SimplicialSet, target: SimplicialSet, assign: Vec<Vec<Simplex>>) -> Result<Self> {
        let m = SimplicialMap::new_unchecked(source, target, assign);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: SimplicialSet, target: SimplicialSet, assign: Vec<Vec<Simplex>>) -> Self {
        SimplicialMap { source, target, assign }
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        let assign = x.counts().iter().enumerate()
            .map(|(d, &c)| (0..c).map(|i| Simplex::nondeg(SimplexId::new(d, i))).collect())
            .collect();
        SimplicialMap::new_unchecked(x.clone(), x.clone(), assign)
    }

    /// The map determined by a vertex assignment into a vertex-determined target.
    pub fn from_vertex_map(source: &SimplicialSet, target: &SimplicialSet, vmap: &[usize]) -> Result<Self> {
        if !target.is_vertex_determined() {
            return Err(Error::Unsupported("vertex maps need a vertex-determined target".into()));
        }
        if vmap.len() != source.count(0) || vmap.iter().any(|&v| v >= target.count(0)) {
            return Err(Error::Invalid("vertex map has the wrong length or range".into()));
        }
        let mut assign = Vec::new();
        for d in 0..=source.top_dim().unwrap_or(0) {
            let mut level = Vec::with_capacity(source.count(d));
            for id in source.ids(d) {
                let seq: Vec<usize> = source.verts_of(id).iter().map(|&v| vmap[v]).collect();
                let img = target.lookup(&seq).ok_or_else(|| {
                    Error::Invalid(format!("no target simplex on vertices {seq:?}"))
                })?;
                level.push(img);
            }
            assign.push(level);
        }
        if source.is_vertex_determined() {
            Ok(SimplicialMap::new_unchecked(source.clone(), target.clone(), assign))
        } else {
            SimplicialMap::new(source.clone(), target.clone(), assign)
        }
    }

    pub fn source(&self) -> &SimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &SimplicialSet {
        &self.target
    }

    pub fn image(&self, id: SimplexId) -> &Simplex {
        &self.assign[id.dim][id.idx]
    }

    pub fn assignment(&self) -> &[Vec<Simplex>] {
        &self.assign
    }

    pub fn apply(&self, s: &Simplex) -> Simplex {
        let img = self.image(s.base);
        if s.word.is_empty() {
            return img.clone();
        }
        self.target.act(&s.surjection(), img)
    }

    pub fn vertex_map(&self) -> Vec<usize> {
        self.source.ids(0).map(|id| self.image(id).base.idx).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.assign.len() < self.source.counts().len() {
            return Err(Error::Malformed("assignment is missing dimensions".into()));
        }
        for (d, &c) in self.source.counts().iter().enumerate() {
            if self.assign[d].len() != c {
                return Err(Error::Malformed(format!("assignment has wrong size in dimension {d}")));
            }
            for (i, img) in self.assign[d].iter().enumerate() {
                if img.dim() != d || !img.is_normal() || !self.target.contains(img.base) {
                    return Err(Error::Malformed(format!("bad image {img} for {d}:{i}")));
                }
            }
        }
        for d in 1..self.source.counts().len() {
            for id in self.source.ids(d) {
                let img = self.image(id);
                for (i, f) in self.source.faces_of(id).iter().enumerate() {
                    if self.apply(f) != self.target.face(img, i) {
                        return Err(Error::Malformed(format!("map does not commute with d{i} on {id}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != *other.source() {
            return Err(Error::Invalid("maps are not composable".into()));
        }
        let assign = self.assign.iter().map(|l| l.iter().map(|s| other.apply(s)).collect()).collect();
        Ok(SimplicialMap::new_unchecked(self.source.clone(), other.target.clone(), assign))
    }

    /// Injective on simplices: nondegenerate images, pairwise distinct.
    pub fn is_mono(&self) -> bool {
        let mut seen = HashSet::new();
        self.assign.iter().flatten().all(|s| !s.is_degenerate() && seen.insert(s.base))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_mono() && self.source.counts() == self.target.counts()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<SimplicialMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut assign: Vec<Vec<Simplex>> = self.target.counts().iter()
            .map(|&c| vec![Simplex::vertex(0); c])
            .collect();
        for id in self.source.all_ids() {
            let t = self.image(id).base;
            assign[t.dim][t.idx] = Simplex::nondeg(id);
        }
        Some(SimplicialMap::new_unchecked(self.target.clone(), self.source.clone(), assign))
    }

    /// Nondegenerate target simplices hit by a nondegenerate image.
    pub fn image_ids(&self) -> HashSet<SimplexId> {
        self.assign.iter().flatten().filter(|s| !s.is_degenerate()).map(|s| s.base).collect()
    }

    /// Agreement of two maps with the same source and target.
    pub fn same_as(&self, other: &SimplicialMap) -> bool {
        self.target == other.target && self.assign == other.assign
    }
}
