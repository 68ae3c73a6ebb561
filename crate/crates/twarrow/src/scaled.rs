//! Scaled and marked simplicial sets, decoration-preserving maps, and the
//! certificate format for scaled anodyne inclusions.

use crate::error::{invalid, Error, Result};
use crate::sset::{extensions, op_simplex, opposite, standard, Simplex, SimplexId, SimplexTable, SimplicialMap, SimplicialSet};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecorationKind {
    /// Thin 2-simplices.
    Scaling,
    /// Marked edges.
    Marking,
}

impl DecorationKind {
    pub fn dim(self) -> usize {
        match self {
            DecorationKind::Scaling => 2,
            DecorationKind::Marking => 1,
        }
    }
}

/// A simplicial set with a set of decorated nondegenerate simplices of the
/// decoration's dimension. Degenerate simplices count as decorated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedSet {
    pub base: SimplicialSet,
    pub kind: DecorationKind,
    cells: BTreeSet<usize>,
}

pub type ScaledSet = DecoratedSet;
pub type MarkedSet = DecoratedSet;

/// Requested decoration for [`scale`] and [`mark`].
#[derive(Clone, Debug)]
pub enum Decoration {
    Flat,
    Sharp,
    Ids(Vec<usize>),
    /// Vertex sequences in a vertex-determined set.
    Vertices(Vec<Vec<usize>>),
}

impl DecoratedSet {
    pub fn new(base: SimplicialSet, kind: DecorationKind, cells: impl IntoIterator<Item = usize>) -> Result<Self> {
        let cells: BTreeSet<usize> = cells.into_iter().collect();
        let d = kind.dim();
        if let Some(&bad) = cells.iter().find(|&&c| c >= base.count(d)) {
            return invalid(format!("unknown {d}-simplex {bad}"));
        }
        Ok(DecoratedSet { base, kind, cells })
    }

    fn build(base: &SimplicialSet, kind: DecorationKind, dec: Decoration) -> Result<Self> {
        let d = kind.dim();
        let cells: Vec<usize> = match dec {
            Decoration::Flat => vec![],
            Decoration::Sharp => (0..base.count(d)).collect(),
            Decoration::Ids(v) => v,
            Decoration::Vertices(seqs) => seqs
                .iter()
                .map(|s| {
                    if s.len() != d + 1 {
                        return invalid(format!("{s:?} is not a {d}-simplex"));
                    }
                    base.lookup_id(s).map(|id| id.idx).ok_or_else(|| Error::Invalid(format!("no simplex on {s:?}")))
                })
                .collect::<Result<_>>()?,
        };
        DecoratedSet::new(base.clone(), kind, cells)
    }

    pub fn flat(base: &SimplicialSet) -> Self {
        DecoratedSet::build(base, DecorationKind::Scaling, Decoration::Flat).unwrap()
    }

    pub fn sharp(base: &SimplicialSet) -> Self {
        DecoratedSet::build(base, DecorationKind::Scaling, Decoration::Sharp).unwrap()
    }

    pub fn cells(&self) -> &BTreeSet<usize> {
        &self.cells
    }

    pub fn count(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.cells.contains(&idx)
    }

    /// Whether a simplex of the decoration's dimension is decorated.
    pub fn is_decorated(&self, s: &Simplex) -> bool {
        debug_assert_eq!(s.dim(), self.kind.dim());
        s.is_degenerate() || self.cells.contains(&s.base.idx)
    }

    /// Vertex sequences of the decorated nondegenerate cells, sorted.
    pub fn cell_vertices(&self) -> Vec<Vec<usize>> {
        let d = self.kind.dim();
        let mut v: Vec<Vec<usize>> =
            self.cells.iter().map(|&c| self.base.verts_of(SimplexId::new(d, c)).to_vec()).collect();
        v.sort();
        v
    }

    /// All simplices of dimension `k` have every decoration-dimensional face
    /// decorated.
    pub fn all_faces_decorated(&self, s: &Simplex) -> bool {
        let d = self.kind.dim();
        let k = s.dim();
        if k < d {
            return true;
        }
        crate::sset::ordmap::injections(d, k).iter().all(|t| self.is_decorated(&self.base.act(t, s)))
    }

    /// Add cells; ids must exist.
    pub fn with(&self, extra: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut cells = self.cells.clone();
        cells.extend(extra);
        DecoratedSet::new(self.base.clone(), self.kind, cells)
    }

    /// The decoration pulled back along a map into `self.base`.
    pub fn pullback(&self, f: &SimplicialMap) -> Self {
        let d = self.kind.dim();
        let cells = f.source().ids(d).filter(|id| self.is_decorated(&f.apply(&Simplex::nondeg(*id)))).map(|id| id.idx);
        DecoratedSet::new(f.source().clone(), self.kind, cells).unwrap()
    }

    /// Whether `f : self.base → other.base` sends decorated to decorated.
    pub fn preserved_by(&self, f: &SimplicialMap, other: &DecoratedSet) -> bool {
        let d = self.kind.dim();
        self.kind == other.kind
            && self.cells.iter().all(|&c| other.is_decorated(&f.apply(&Simplex::nondeg(SimplexId::new(d, c)))))
    }

    /// The opposite set with the transported decoration (ids are kept).
    pub fn dual(&self) -> Self {
        DecoratedSet { base: opposite(&self.base), kind: self.kind, cells: self.cells.clone() }
    }
}

/// `X` with the given scaling.
pub fn scale(x: &SimplicialSet, thin: Decoration) -> Result<ScaledSet> {
    DecoratedSet::build(x, DecorationKind::Scaling, thin)
}

/// `X` with the given marking.
pub fn mark(x: &SimplicialSet, marked: Decoration) -> Result<MarkedSet> {
    DecoratedSet::build(x, DecorationKind::Marking, marked)
}

/// Simplicial maps `X → Y` sending decorated cells to decorated cells.
pub fn decorated_hom(x: &DecoratedSet, y: &DecoratedSet) -> Result<Vec<SimplicialMap>> {
    if x.kind != y.kind {
        return Err(Error::Invalid("decoration kinds differ".into()));
    }
    let d = x.kind.dim();
    let table = SimplexTable::new(&y.base, x.base.top_dim().unwrap_or(0));
    let filter = |id: SimplexId, img: &Simplex| id.dim != d || !x.contains(id.idx) || y.is_decorated(img);
    Ok(extensions(&x.base, &y.base, &table, &HashMap::new(), &filter, None))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorClass {
    /// `Λⁿᵢ ⊂ Δⁿ`, `0 < i < n`, with `Δ^{i−1,i,i+1}` thin.
    InnerHornThinMiddle,
    /// Any horn inclusion under a caller-chosen tag. Only accepted by the
    /// verifier when explicitly allowed.
    Extra(String),
}

impl GeneratorClass {
    pub fn tag(&self) -> String {
        match self {
            GeneratorClass::InnerHornThinMiddle => "inner_horn_thin_middle".into(),
            GeneratorClass::Extra(t) => t.clone(),
        }
    }

    pub fn from_tag(tag: &str) -> Self {
        if tag == "inner_horn_thin_middle" {
            GeneratorClass::InnerHornThinMiddle
        } else {
            GeneratorClass::Extra(tag.to_string())
        }
    }
}

/// A horn inclusion `Λⁿᵢ ⊂ Δⁿ` with a codomain scaling (vertex triples of
/// `Δⁿ`); the domain carries the induced scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInstance {
    pub class: GeneratorClass,
    pub n: usize,
    pub i: usize,
    pub thin: BTreeSet<[usize; 3]>,
}

impl GeneratorInstance {
    /// Whether a triangle of `Δⁿ` lies in the horn.
    pub fn in_horn(&self, t: &[usize; 3]) -> bool {
        (0..=self.n).any(|k| k != self.i && !t.contains(&k))
    }

    pub fn codomain(&self) -> ScaledSet {
        let d = standard(self.n);
        let seqs = self.thin.iter().map(|t| t.to_vec()).collect();
        scale(&d, Decoration::Vertices(seqs)).expect("triples of the simplex")
    }

    pub fn domain(&self) -> ScaledSet {
        let horn = crate::sset::simplex_family(crate::sset::SimplexKind::Horn, self.n, Some(self.i)).unwrap();
        let seqs = self.thin.iter().filter(|t| self.in_horn(t)).map(|t| t.to_vec()).collect();
        scale(&horn, Decoration::Vertices(seqs)).expect("triples of the horn")
    }

    /// The same generator for opposite sets: index `n − i`, triples reversed.
    pub fn dual(&self) -> Self {
        let n = self.n;
        let thin = self.thin.iter().map(|t| [n - t[2], n - t[1], n - t[0]]).collect();
        GeneratorInstance { class: self.class.clone(), n, i: n - self.i, thin }
    }
}

/// Build a generator instance, checking the class constraints.
pub fn generator(class: GeneratorClass, n: usize, i: usize, thin: &[[usize; 3]]) -> Result<GeneratorInstance> {
    for t in thin {
        if !(t[0] < t[1] && t[1] < t[2] && t[2] <= n) {
            return invalid(format!("{t:?} is not a triangle of the {n}-simplex"));
        }
    }
    let thin: BTreeSet<[usize; 3]> = thin.iter().copied().collect();
    if class == GeneratorClass::InnerHornThinMiddle {
        if i == 0 || i >= n {
            return invalid(format!("horn index {i} is not inner for n = {n}"));
        }
        if !thin.contains(&[i - 1, i, i + 1]) {
            return invalid(format!("middle triangle {{{},{},{}}} is not thin", i - 1, i, i + 1));
        }
    } else if i > n {
        return invalid(format!("horn index {i} exceeds {n}"));
    }
    Ok(GeneratorInstance { class, n, i, thin })
}

/// One pushout step: the generator and the image of the top simplex of `Δⁿ`,
/// which determines the attaching map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateStep {
    pub generator: GeneratorInstance,
    pub attach: Simplex,
}

/// An inclusion `A_† ⊂ B_†` given by a subcomplex of `B` and its scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledInclusion {
    pub target: ScaledSet,
    pub sub: BTreeSet<SimplexId>,
    pub sub_thin: BTreeSet<usize>,
}

impl ScaledInclusion {
    /// A subcomplex with the scaling induced from the target.
    pub fn induced(target: &ScaledSet, sub: BTreeSet<SimplexId>) -> Self {
        let sub_thin = target.cells().iter().copied().filter(|&c| sub.contains(&SimplexId::new(2, c))).collect();
        ScaledInclusion { target: target.clone(), sub, sub_thin }
    }

    pub fn identity(target: &ScaledSet) -> Self {
        ScaledInclusion::induced(target, target.base.all_ids().into_iter().collect())
    }

    pub fn dual(&self) -> Self {
        ScaledInclusion { target: self.target.dual(), sub: self.sub.clone(), sub_thin: self.sub_thin.clone() }
    }

    pub fn is_subcomplex(&self) -> bool {
        let b = &self.target.base;
        self.sub.iter().all(|id| b.contains(*id) && (id.dim == 0 || b.faces_of(*id).iter().all(|f| self.sub.contains(&f.base))))
            && self.sub_thin.iter().all(|&c| self.sub.contains(&SimplexId::new(2, c)) && self.target.contains(c))
    }
}

/// Ordered pushout steps witnessing that an inclusion is scaled anodyne.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AnodyneCertificate {
    pub steps: Vec<CertificateStep>,
}

impl AnodyneCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn dual(&self) -> Self {
        let steps = self
            .steps
            .iter()
            .map(|s| CertificateStep { generator: s.generator.dual(), attach: op_simplex(&s.attach) })
            .collect();
        AnodyneCertificate { steps }
    }

    pub fn extend(&mut self, other: AnodyneCertificate) {
        self.steps.extend(other.steps);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// 1-based index of the first failing step (`len + 1` when the steps are
    /// fine but the final stage is not the target), with the reason.
    Invalid { first_bad_step: usize, reason: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyConfig {
    pub allow_extra: bool,
}

/// Check a certificate against an inclusion.
pub fn verify_certificate(cert: &AnodyneCertificate, incl: &ScaledInclusion) -> Result<Verdict> {
    verify_with(cert, incl, VerifyConfig::default())
}

pub fn verify_with(cert: &AnodyneCertificate, incl: &ScaledInclusion, cfg: VerifyConfig) -> Result<Verdict> {
    if !incl.is_subcomplex() {
        return Err(Error::Malformed("start is not a scaled subcomplex of the target".into()));
    }
    let b = &incl.target.base;
    let mut stage = incl.sub.clone();
    let mut thin = incl.sub_thin.clone();
    let bad = |k: usize, r: String| Ok(Verdict::Invalid { first_bad_step: k + 1, reason: r });
    for (k, step) in cert.steps.iter().enumerate() {
        let g = &step.generator;
        let (n, i) = (g.n, g.i);
        match &g.class {
            GeneratorClass::InnerHornThinMiddle => {
                if i == 0 || i >= n || !g.thin.contains(&[i - 1, i, i + 1]) {
                    return bad(k, format!("generator ({n},{i}) lacks a thin middle triangle"));
                }
            }
            GeneratorClass::Extra(tag) => {
                if !cfg.allow_extra {
                    return bad(k, format!("generator class {tag} is not enabled"));
                }
            }
        }
        let top = &step.attach;
        if top.dim() != n || !b.contains(top.base) {
            return Err(Error::Malformed(format!("step {} attaches a non-simplex", k + 1)));
        }
        if top.is_degenerate() || stage.contains(&top.base) {
            return bad(k, format!("top simplex {} is degenerate or already present", b.describe(top)));
        }
        let missing = b.face(top, i);
        if missing.is_degenerate() || stage.contains(&missing.base) || missing.base == top.base {
            return bad(k, format!("face d{i} = {} is degenerate or already present", b.describe(&missing)));
        }
        for j in (0..=n).filter(|&j| j != i) {
            let f = b.face(top, j);
            if !stage.contains(&f.base) {
                return bad(k, format!("horn face d{j} = {} is not in the current stage", b.describe(&f)));
            }
        }
        let mut added = Vec::new();
        for t in &g.thin {
            let img = b.act(t, top);
            if img.is_degenerate() {
                continue;
            }
            if !incl.target.contains(img.base.idx) {
                return bad(k, format!("generator triangle {t:?} lands on {}, which is not thin", b.describe(&img)));
            }
            if g.in_horn(t) {
                if !thin.contains(&img.base.idx) {
                    return bad(k, format!("horn triangle {} is thin in the generator but not in the stage", b.describe(&img)));
                }
            } else {
                added.push(img.base.idx);
            }
        }
        stage.insert(top.base);
        stage.insert(missing.base);
        thin.extend(added);
    }
    let k = cert.steps.len();
    if stage.len() != b.total() {
        return bad(k, format!("final stage has {} of {} simplices", stage.len(), b.total()));
    }
    if &thin != incl.target.cells() {
        let extra: Vec<String> =
            thin.symmetric_difference(incl.target.cells()).map(|&c| b.describe(&Simplex::nondeg(SimplexId::new(2, c)))).collect();
        return bad(k, format!("final scaling differs from the target on {}", extra.join(" ")));
    }
    Ok(Verdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{hom_enum, simplex_subcomplex};

    fn tetra(thin: &[[usize; 3]]) -> ScaledSet {
        scale(&standard(3), Decoration::Vertices(thin.iter().map(|t| t.to_vec()).collect())).unwrap()
    }

    fn pivot_example(target: &ScaledSet) -> (AnodyneCertificate, ScaledInclusion) {
        let b = &target.base;
        let a = simplex_subcomplex(3, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let sub: BTreeSet<SimplexId> =
            a.all_ids().into_iter().map(|id| b.lookup_id(a.verts_of(id)).unwrap()).collect();
        let incl = ScaledInclusion::induced(target, sub);
        let s1 = CertificateStep {
            generator: generator(GeneratorClass::InnerHornThinMiddle, 2, 1, &[[0, 1, 2]]).unwrap(),
            attach: Simplex::nondeg(b.lookup_id(&[0, 2, 3]).unwrap()),
        };
        let s2 = CertificateStep {
            generator: generator(GeneratorClass::InnerHornThinMiddle, 3, 2, &[[0, 2, 3], [1, 2, 3]]).unwrap(),
            attach: Simplex::nondeg(b.lookup_id(&[0, 1, 2, 3]).unwrap()),
        };
        (AnodyneCertificate { steps: vec![s1, s2] }, incl)
    }

    #[test]
    fn scale_examples() {
        assert_eq!(DecoratedSet::sharp(&standard(2)).count(), 1);
        assert_eq!(DecoratedSet::flat(&standard(3)).count(), 0);
        assert!(DecoratedSet::new(standard(2), DecorationKind::Scaling, [3]).is_err());
    }

    #[test]
    fn decorated_hom_examples() {
        let d2 = standard(2);
        let n = decorated_hom(&DecoratedSet::sharp(&d2), &DecoratedSet::flat(&d2)).unwrap().len();
        // every monotone self-map of [2] except the identity collapses the triangle
        assert_eq!(n, 9);
        let d1 = standard(1);
        let all = hom_enum(&d2, &d1).len();
        assert_eq!(decorated_hom(&DecoratedSet::sharp(&d2), &DecoratedSet::sharp(&d1)).unwrap().len(), all);
        assert_eq!(decorated_hom(&DecoratedSet::flat(&d2), &DecoratedSet::flat(&d2)).unwrap().len(), 10);
        let m = mark(&d1, Decoration::Flat).unwrap();
        assert!(decorated_hom(&m, &DecoratedSet::flat(&d1)).is_err());
    }

    #[test]
    fn generator_constraints() {
        assert!(generator(GeneratorClass::InnerHornThinMiddle, 2, 1, &[[0, 1, 2]]).is_ok());
        assert!(generator(GeneratorClass::InnerHornThinMiddle, 3, 2, &[[1, 2, 3]]).is_ok());
        assert!(generator(GeneratorClass::InnerHornThinMiddle, 3, 2, &[]).is_err());
        assert!(generator(GeneratorClass::InnerHornThinMiddle, 3, 3, &[[2, 3, 4]]).is_err());
        let g = generator(GeneratorClass::InnerHornThinMiddle, 4, 1, &[[0, 1, 2]]).unwrap();
        let d = g.dual();
        assert_eq!(d.i, 3);
        assert!(d.thin.contains(&[2, 3, 4]));
        assert_eq!(d.dual(), g);
    }

    #[test]
    fn two_step_certificate() {
        let target = tetra(&[[0, 2, 3], [1, 2, 3]]);
        let (cert, incl) = pivot_example(&target);
        assert_eq!(verify_certificate(&cert, &incl).unwrap(), Verdict::Valid);
        let dual = verify_certificate(&cert.dual(), &incl.dual()).unwrap();
        assert_eq!(dual, Verdict::Valid);
        let (cert, incl) = pivot_example(&tetra(&[]));
        match verify_certificate(&cert, &incl).unwrap() {
            Verdict::Invalid { first_bad_step, .. } => assert_eq!(first_bad_step, 1),
            Verdict::Valid => panic!("flat target accepted"),
        }
    }

    #[test]
    fn empty_certificate_for_identity() {
        let t = tetra(&[[0, 1, 2]]);
        let v = verify_certificate(&AnodyneCertificate::default(), &ScaledInclusion::identity(&t)).unwrap();
        assert!(v.is_valid());
    }

    #[test]
    fn dual_is_involutive() {
        let t = tetra(&[[0, 1, 2], [0, 2, 3]]);
        assert_eq!(t.dual().dual(), t);
    }
}
