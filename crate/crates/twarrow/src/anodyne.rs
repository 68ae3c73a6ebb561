//! Dull subsets, the pivot trick, and the certificates built from it.

use crate::error::{check_cap, invalid, Error, Result};
use crate::scaled::{
    generator, verify_certificate, AnodyneCertificate, CertificateStep, GeneratorClass, ScaledInclusion, ScaledSet,
    Verdict,
};
use crate::sset::{SimplexId, SimplicialSet};
use crate::zoo;
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// A family `𝒜` of subsets of `[n]` that has passed the dullness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DullSubset {
    pub n: usize,
    pub family: Vec<Vec<usize>>,
    pub pivots: Vec<usize>,
}

/// Why a family is not dull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DullViolation {
    EmptySet,
    OutOfRange(usize),
    NotDisjoint(Vec<usize>, Vec<usize>),
    NoPivot,
}

pub fn is_dull(n: usize, family: &[Vec<usize>]) -> std::result::Result<DullSubset, DullViolation> {
    let mut fam: Vec<Vec<usize>> = family
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    fam.sort();
    for s in &fam {
        if s.is_empty() {
            return Err(DullViolation::EmptySet);
        }
        if let Some(&v) = s.iter().find(|&&v| v > n) {
            return Err(DullViolation::OutOfRange(v));
        }
    }
    for (s, t) in fam.iter().tuple_combinations() {
        if s.iter().any(|v| t.contains(v)) {
            return Err(DullViolation::NotDisjoint(s.clone(), t.clone()));
        }
    }
    let singles: Vec<usize> = fam.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
    let pivots: Vec<usize> = (1..n)
        .filter(|i| fam.iter().all(|s| !s.contains(i)))
        .filter(|&i| singles.iter().any(|&u| u < i) && singles.iter().any(|&v| v > i))
        .collect();
    if pivots.is_empty() {
        return Err(DullViolation::NoPivot);
    }
    Ok(DullSubset { n, family: fam, pivots })
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1u64 << (n + 1))).map(move |m| (0..=n).filter(|v| m >> v & 1 == 1).collect())
}

fn by_size_then_lex(a: &Vec<usize>, b: &Vec<usize>) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl DullSubset {
    /// Vertex sets of the nondegenerate simplices of `𝒮^𝒜`.
    pub fn s_complex(&self) -> BTreeSet<Vec<usize>> {
        subsets(self.n).filter(|x| self.in_s(x)).collect()
    }

    /// `σ_X` factors through `𝒮^𝒜` iff `X` misses some `S ∈ 𝒜`.
    pub fn in_s(&self, x: &[usize]) -> bool {
        self.family.iter().any(|s| s.iter().all(|v| !x.contains(v)))
    }

    /// Sets with exactly one element from each `S`, sorted.
    pub fn basal(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .family
            .iter()
            .map(|s| s.iter().copied())
            .multi_cartesian_product()
            .map(|mut x| {
                x.sort_unstable();
                x
            })
            .collect();
        if self.family.is_empty() {
            out = vec![vec![]];
        }
        out.sort();
        out
    }

    fn check_pivot(&self, i: usize) -> Result<()> {
        if self.pivots.contains(&i) {
            Ok(())
        } else {
            invalid(format!("{i} is not an admissible pivot (admissible: {:?})", self.pivots))
        }
    }

    /// `𝓜_𝒜`: sets containing the pivot whose simplex does not factor
    /// through `𝒮^𝒜`, by size then lexicographically.
    pub fn m_sets(&self, i: usize) -> Result<Vec<Vec<usize>>> {
        self.check_pivot(i)?;
        let mut m: Vec<Vec<usize>> = subsets(self.n).filter(|x| x.contains(&i) && !self.in_s(x)).collect();
        m.sort_by(by_size_then_lex);
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaReport {
    pub basal: Vec<Vec<usize>>,
    pub kappa: usize,
    pub stratum: Vec<Vec<usize>>,
    /// `{X₀ ∪ {i} : X₀ basal}`.
    pub predicted: Vec<Vec<usize>>,
}

impl KappaReport {
    pub fn holds(&self) -> bool {
        self.stratum == self.predicted && self.kappa == self.basal.first().map_or(0, |b| b.len()) + 1
    }
}

/// Basal sets, `κ = min |X|` over `𝓜`, and the bottom stratum `𝓜^κ`, all by
/// exhaustive scan over subsets of `[n]`.
pub fn basal_kappa(d: &DullSubset, i: usize) -> Result<KappaReport> {
    let m = d.m_sets(i)?;
    let kappa = m.first().map_or(0, |x| x.len());
    let stratum: Vec<Vec<usize>> = m.into_iter().filter(|x| x.len() == kappa).collect();
    let basal = d.basal();
    let mut predicted: Vec<Vec<usize>> = basal
        .iter()
        .map(|b| {
            let mut x = b.clone();
            x.push(i);
            x.sort_unstable();
            x
        })
        .collect();
    predicted.sort();
    Ok(KappaReport { basal, kappa, stratum, predicted })
}

/// Families of pairwise disjoint nonempty subsets of `[n]` that are dull.
pub fn dull_families(n: usize) -> Vec<DullSubset> {
    // label each vertex with a block number, or with "unused"; blocks are
    // numbered in order of first appearance
    fn go(v: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<DullSubset>) {
        if v > n {
            if let Ok(d) = is_dull(n, blocks) {
                out.push(d);
            }
            return;
        }
        go(v + 1, n, blocks, out);
        for b in 0..blocks.len() {
            blocks[b].push(v);
            go(v + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![v]);
        go(v + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Exhaustive check of the bottom-stratum description for every dull family
/// on `[n]`, `n ≤ max_n`, and every pivot. Returns the number of cases and
/// the failing ones.
pub fn kappa_brute_force(max_n: usize) -> (usize, Vec<(DullSubset, usize)>) {
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 0..=max_n {
        for d in dull_families(n) {
            for &i in &d.pivots {
                count += 1;
                if !basal_kappa(&d, i).is_ok_and(|r| r.holds()) {
                    bad.push((d.clone(), i));
                }
            }
        }
    }
    (count, bad)
}

/// Why the pivot trick did not produce a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PivotFailure {
    /// The hypothesis fails for the chosen basal set: this triangle is not thin.
    Hypothesis { basal: Vec<usize>, triangle: [usize; 3] },
    /// Attaching `x` would need a thin middle triangle that is missing.
    Step { x: Vec<usize>, triangle: [usize; 3] },
}

/// A simplex `Δᵐ → B` given by distinct vertices of a vertex-determined
/// scaled set, with the scaling pulled back.
#[derive(Clone, Debug)]
pub struct SimplexIn<'a> {
    pub target: &'a ScaledSet,
    pub verts: Vec<usize>,
}

impl SimplexIn<'_> {
    fn id_of(&self, local: &[usize]) -> Result<SimplexId> {
        let vs: Vec<usize> = local.iter().map(|&p| self.verts[p]).collect();
        self.target
            .base
            .lookup_id(&vs)
            .ok_or_else(|| Error::Invalid(format!("vertices {vs:?} do not span a simplex")))
    }

    /// Whether the local triangle is thin in the target.
    pub fn thin(&self, t: [usize; 3]) -> bool {
        self.id_of(&t).is_ok_and(|id| self.target.contains(id.idx))
    }
}

/// Check the pivot hypothesis for one basal set: every `{r, i, s}` with
/// `ℓ_{i−1} ≤ r < i < s ≤ ℓ_i` must be thin.
pub fn pivot_hypothesis(thin: &dyn Fn([usize; 3]) -> bool, z: &[usize], i: usize) -> Option<[usize; 3]> {
    let lo = z.iter().copied().filter(|&v| v < i).max()?;
    let hi = z.iter().copied().filter(|&v| v > i).min()?;
    (lo..i).cartesian_product(i + 1..=hi).map(|(r, s)| [r, i, s]).find(|&t| !thin(t))
}

/// The stratified certificate of the pivot trick for `𝒮^𝒜 ⊂ Δᵐ → B`, with
/// the hypothesis checked for basal set `z` (the first one when omitted).
pub fn pivot_steps(
    sigma: &SimplexIn,
    d: &DullSubset,
    i: usize,
    z: Option<&[usize]>,
) -> Result<std::result::Result<Vec<CertificateStep>, PivotFailure>> {
    if sigma.verts.len() != d.n + 1 {
        return invalid("simplex dimension does not match the dull subset");
    }
    let basal = d.basal();
    let z = z.map(|z| z.to_vec()).unwrap_or_else(|| basal[0].clone());
    if !basal.contains(&z) {
        return invalid(format!("{z:?} is not basal"));
    }
    let thin = |t: [usize; 3]| sigma.thin(t);
    if let Some(triangle) = pivot_hypothesis(&thin, &z, i) {
        return Ok(Err(PivotFailure::Hypothesis { basal: z, triangle }));
    }
    let mut steps = Vec::new();
    for x in d.m_sets(i)? {
        let pos = x.iter().position(|&v| v == i).unwrap();
        let local_thin: Vec<[usize; 3]> =
            (0..x.len()).combinations(3).map(|c| [c[0], c[1], c[2]]).filter(|c| thin([x[c[0]], x[c[1]], x[c[2]]])).collect();
        let middle = [pos - 1, pos, pos + 1];
        if !local_thin.contains(&middle) {
            return Ok(Err(PivotFailure::Step { x: x.clone(), triangle: [x[pos - 1], i, x[pos + 1]] }));
        }
        let g = generator(GeneratorClass::InnerHornThinMiddle, x.len() - 1, pos, &local_thin)?;
        let top = sigma.id_of(&x)?;
        steps.push(CertificateStep { generator: g, attach: crate::sset::Simplex::nondeg(top) });
    }
    Ok(Ok(steps))
}

/// Try every admissible pivot and every basal set; the first success wins.
pub fn pivot_search(
    sigma: &SimplexIn,
    d: &DullSubset,
) -> Result<std::result::Result<(usize, Vec<CertificateStep>), PivotFailure>> {
    let mut first_failure = None;
    for &i in &d.pivots {
        for z in d.basal() {
            match pivot_steps(sigma, d, i, Some(&z))? {
                Ok(s) => return Ok(Ok((i, s))),
                Err(f) => {
                    first_failure.get_or_insert(f);
                }
            }
        }
    }
    Ok(Err(first_failure.expect("dull subsets have a pivot")))
}

/// The certificate and verdict for a pivot run on a scaled simplex.
#[derive(Clone, Debug)]
pub struct PivotRun {
    pub dull: DullSubset,
    pub pivot: usize,
    pub inclusion: ScaledInclusion,
    pub certificate: AnodyneCertificate,
    pub verdict: Verdict,
}

/// Pivot trick on `Δⁿ` with the given thin triangles. `pivot = None` searches.
pub fn pivot_certificate(
    n: usize,
    family: &[Vec<usize>],
    thin: &[[usize; 3]],
    pivot: Option<usize>,
) -> Result<std::result::Result<PivotRun, PivotFailure>> {
    check_cap(n)?;
    let dull = is_dull(n, family).map_err(|v| Error::Invalid(format!("not dull: {v:?}")))?;
    let base = crate::sset::standard(n);
    let target = crate::scaled::scale(&base, crate::scaled::Decoration::Vertices(thin.iter().map(|t| t.to_vec()).collect()))?;
    let sigma = SimplexIn { target: &target, verts: (0..=n).collect() };
    let (pivot, steps) = match pivot {
        Some(i) => {
            dull.check_pivot(i)?;
            match pivot_steps(&sigma, &dull, i, None)? {
                Ok(s) => (i, s),
                Err(f) => return Ok(Err(f)),
            }
        }
        None => match pivot_search(&sigma, &dull)? {
            Ok(p) => p,
            Err(f) => return Ok(Err(f)),
        },
    };
    let sub: BTreeSet<SimplexId> =
        dull.s_complex().iter().map(|x| base.lookup_id(x).unwrap()).collect();
    let inclusion = ScaledInclusion::induced(&target, sub);
    let certificate = AnodyneCertificate { steps };
    let verdict = verify_certificate(&certificate, &inclusion)?;
    Ok(Ok(PivotRun { dull, pivot, inclusion, certificate, verdict }))
}

/// Record of one simplex added to a stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub verts: Vec<usize>,
    /// The family read off the preimage of the stage, in local coordinates.
    pub family: Vec<Vec<usize>>,
    pub pivot: usize,
    pub steps: usize,
}

/// Add the simplex with vertices `verts` to `stage` by the pivot trick:
/// read the dull family off the preimage of the stage, search pivots, and
/// extend `steps` and `stage`.
pub fn extend_by_simplex(
    target: &ScaledSet,
    stage: &mut BTreeSet<SimplexId>,
    verts: &[usize],
    cert: &mut AnodyneCertificate,
) -> Result<Option<Extension>> {
    let b = &target.base;
    let top = b.lookup_id(verts).ok_or_else(|| Error::Invalid(format!("{verts:?} is not a simplex")))?;
    if stage.contains(&top) {
        return Ok(None);
    }
    let pre = zoo::preimage(b, verts, stage);
    let m = verts.len() - 1;
    let maximal: Vec<&Vec<usize>> =
        pre.iter().filter(|f| !pre.iter().any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v)))).collect();
    let family: Vec<Vec<usize>> = maximal.iter().map(|f| (0..=m).filter(|v| !f.contains(v)).collect()).collect();
    let dull = is_dull(m, &family)
        .map_err(|v| Error::Invalid(format!("preimage of the stage along {verts:?} is not dull: {v:?}")))?;
    if dull.s_complex() != pre {
        return Err(Error::Invalid(format!("preimage along {verts:?} is not a union of faces")));
    }
    let sigma = SimplexIn { target, verts: verts.to_vec() };
    let (pivot, steps) = pivot_search(&sigma, &dull)?
        .map_err(|f| Error::Invalid(format!("no pivot works for {verts:?}: {f:?}")))?;
    let n_steps = steps.len();
    let full = b.closure(&[top]);
    stage.extend(full);
    cert.steps.extend(steps);
    Ok(Some(Extension { verts: verts.to_vec(), family: dull.family, pivot, steps: n_steps }))
}

/// A certificate assembled from a sequence of simplex additions, with the
/// inclusion it certifies and the verdict of the checker.
#[derive(Clone, Debug)]
pub struct PaperCertificate {
    pub inclusion: ScaledInclusion,
    pub certificate: AnodyneCertificate,
    pub extensions: Vec<Extension>,
    pub verdict: Verdict,
}

impl PaperCertificate {
    fn build(target: ScaledSet, start: BTreeSet<SimplexId>, adds: &[Vec<usize>]) -> Result<Self> {
        let inclusion = ScaledInclusion::induced(&target, start.clone());
        let mut stage = start;
        let mut certificate = AnodyneCertificate::default();
        let mut extensions = Vec::new();
        for vs in adds {
            if let Some(e) = extend_by_simplex(&target, &mut stage, vs, &mut certificate)? {
                extensions.push(e);
            }
        }
        let verdict = verify_certificate(&certificate, &inclusion)?;
        Ok(PaperCertificate { inclusion, certificate, extensions, verdict })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PaperWhich {
    Fibstep1 { n: usize, i: usize },
    Fibstep2 { n: usize, i: usize },
    Xi { n: usize },
}

pub fn paper_certificate(which: PaperWhich) -> Result<PaperCertificate> {
    match which {
        PaperWhich::Fibstep1 { n, i } => fibstep1(n, i),
        PaperWhich::Fibstep2 { n, i } => fibstep2(n, i),
        PaperWhich::Xi { n } => xi(n).map(|(c, _)| c),
    }
}

fn fib_cap(n: usize) -> Result<()> {
    if n > 3 {
        return Err(Error::DimCap { got: n, cap: 3 });
    }
    check_cap(n)
}

/// The family read off `𝒦ⁿᵢ` inside `Q(n)`: `{0}`, `{2n+1}` and `{j, j̄}`
/// for `0 < j ≤ n`, `j ≠ i`.
pub fn fibstep1_family(n: usize, i: usize) -> Vec<Vec<usize>> {
    let top = 2 * n + 1;
    let mut f = vec![vec![0], vec![top]];
    f.extend((1..=n).filter(|&j| j != i).map(|j| vec![j, top - j]));
    f.sort();
    f
}

/// `𝒦ⁿᵢ → Q(n)` (with `Q(n)_◇` when `i = n`).
pub fn fibstep1(n: usize, i: usize) -> Result<PaperCertificate> {
    fib_cap(n)?;
    let f = zoo::tw_fib_subobjects(n, i)?;
    PaperCertificate::build(f.q.clone(), f.kcal.clone(), &[(0..=2 * n + 1).collect()])
}

/// The stages of `Kⁿᵢ → 𝒦ⁿᵢ`: the faces `Δ^{[r,2n+1]}` for `r = n, …, 1`,
/// then `Δ^{[0,2n+1−r]}` for `r = n, …, 1`.
pub fn fibstep2_order(n: usize) -> Vec<Vec<usize>> {
    let top = 2 * n + 1;
    let mut adds: Vec<Vec<usize>> = (1..=n).rev().map(|r| (r..=top).collect()).collect();
    adds.extend((1..=n).rev().map(|r| (0..=top - r).collect()));
    adds
}

/// The family predicted for the face `Δ^{[r,2n+1]}` in its own coordinates.
pub fn fibstep2_family(n: usize, i: usize, r: usize) -> Vec<Vec<usize>> {
    let mut f = vec![vec![0]];
    let top = 2 * n + 1;
    for j in top + 1 - 2 * r..=top - r {
        if j != 2 * n + 1 - r - i {
            f.push(vec![j]);
        }
    }
    // k = 0 would give a superset of {0}, which adds nothing to 𝒮^𝒜
    for k in 1..=n - r {
        if r + k != i {
            let mut s = vec![k, top - 2 * r - k];
            s.sort_unstable();
            s.dedup();
            f.push(s);
        }
    }
    f.sort();
    f.dedup();
    f
}

/// `Kⁿᵢ → 𝒦ⁿᵢ` with the scaling of `Q(n)` (or `Q(n)_◇`).
pub fn fibstep2(n: usize, i: usize) -> Result<PaperCertificate> {
    fib_cap(n)?;
    let f = zoo::tw_fib_subobjects(n, i)?;
    let (kcal, back) = f.q.base.subcomplex(|id| f.kcal.contains(&id))?;
    let target = zoo::induced_sub(&f.q, &f.kcal)?;
    // ids of the subcomplex are renumbered; translate K along `back`
    let start: BTreeSet<SimplexId> = (0..back.len())
        .flat_map(|d| back[d].iter().enumerate().map(move |(k, old)| (d, k, *old)))
        .filter(|(_, _, old)| f.k.contains(old))
        .map(|(d, k, _)| SimplexId::new(d, k))
        .collect();
    let relabel = relabel_to(&f.q.base, &kcal);
    let adds: Vec<Vec<usize>> = fibstep2_order(n).into_iter().map(|vs| vs.iter().map(|&v| relabel[v]).collect()).collect();
    PaperCertificate::build(target, start, &adds)
}

/// Vertex numbering of `sub` in terms of the vertices of `x`, matched by label.
fn relabel_to(x: &SimplicialSet, sub: &SimplicialSet) -> Vec<usize> {
    x.labels().iter().map(|l| sub.labels().iter().position(|m| m == l).unwrap_or(usize::MAX)).collect()
}

/// `Aⁿ ⊂ Bⁿ`, attaching the `σ_(r,s)` in order of `|r − s|`.
pub fn xi_summand(n: usize) -> Result<PaperCertificate> {
    let b = zoo::b_level(n)?;
    let start = zoo::a_sub(n, &b.base);
    PaperCertificate::build(b, start, &xi_order(n)?)
}

/// The simplices `σ_(r,s)` with `r − s = α`, `α = 1, …, n`, then with
/// `s − r = α`, each stratum in lexicographic order.
pub fn xi_order(n: usize) -> Result<Vec<Vec<usize>>> {
    let mut adds = Vec::new();
    for sign in [1i64, -1] {
        for alpha in 1..=n as i64 {
            for (r, s) in (0..=n).cartesian_product(0..=n) {
                if (r as i64 - s as i64) * sign == alpha {
                    adds.push(zoo::sigma_rs(n, r, s)?);
                }
            }
        }
    }
    Ok(adds)
}

/// `ξₙ : 𝒬(n) → ℛ(n)`, summand by summand. Also returns the per-summand
/// certificate on `Bⁿ`.
pub fn xi(n: usize) -> Result<(PaperCertificate, PaperCertificate)> {
    if n > 2 {
        return Err(Error::DimCap { got: n, cap: 2 });
    }
    let summand = xi_summand(n)?;
    let r = zoo::r_level(n)?;
    let start = zoo::qcal_sub(n, &r.base);
    let mut adds = Vec::new();
    for s in 1..=2 {
        for vs in xi_order(n)? {
            adds.push(vs.iter().map(|&v| zoo::summand_to_r(n, s, zoo::summand_elem(n, v))).collect());
        }
    }
    Ok((PaperCertificate::build(r, start, &adds)?, summand))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dull_examples() {
        let d = is_dull(3, &[vec![0], vec![3]]).unwrap();
        assert_eq!(d.pivots, vec![1, 2]);
        assert!(is_dull(5, &fibstep1_family(2, 1)).is_ok());
        assert!(matches!(is_dull(3, &[vec![0, 1], vec![1, 2]]), Err(DullViolation::NotDisjoint(..))));
        assert_eq!(is_dull(3, &[vec![0], vec![]]), Err(DullViolation::EmptySet));
        assert_eq!(is_dull(3, &[vec![0, 3]]), Err(DullViolation::NoPivot));
    }

    #[test]
    fn kappa_examples() {
        let d = is_dull(3, &[vec![0], vec![3]]).unwrap();
        let r = basal_kappa(&d, 1).unwrap();
        assert_eq!(r.basal, vec![vec![0, 3]]);
        assert_eq!(r.kappa, 3);
        assert_eq!(r.stratum, vec![vec![0, 1, 3]]);
        assert!(r.holds());
        let d = is_dull(5, &fibstep1_family(2, 1)).unwrap();
        assert_eq!(d.basal().len(), 2);
        let s: Vec<Vec<usize>> = is_dull(3, &[vec![0], vec![3]]).unwrap().s_complex().into_iter().filter(|x| x.len() == 3).collect();
        assert_eq!(s, vec![vec![0, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn kappa_small_brute_force() {
        let (count, bad) = kappa_brute_force(4);
        assert!(count > 0);
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn pivot_examples() {
        let run = pivot_certificate(3, &[vec![0], vec![3]], &[[0, 2, 3], [1, 2, 3]], Some(2)).unwrap().unwrap();
        assert_eq!(run.certificate.len(), 2);
        assert!(run.verdict.is_valid());
        let fail = pivot_certificate(3, &[vec![0], vec![3]], &[[0, 1, 2], [1, 2, 3]], Some(1)).unwrap();
        assert_eq!(fail.unwrap_err(), PivotFailure::Hypothesis { basal: vec![0, 3], triangle: [0, 1, 3] });
        let auto = pivot_certificate(3, &[vec![0], vec![3]], &[[0, 2, 3], [1, 2, 3]], None).unwrap().unwrap();
        assert_eq!(auto.pivot, 2);
        assert!(pivot_certificate(3, &[vec![0], vec![3]], &[], Some(0)).is_err());
    }

    #[test]
    fn fibstep1_family_read_off() {
        for (n, i) in [(1, 1), (2, 1), (2, 2)] {
            let c = fibstep1(n, i).unwrap();
            assert_eq!(c.extensions.len(), 1);
            assert_eq!(c.extensions[0].family, fibstep1_family(n, i));
            assert!(c.verdict.is_valid(), "{n} {i}: {:?}", c.verdict);
        }
    }

    #[test]
    fn fibstep2_small() {
        for (n, i) in [(1, 1), (2, 1), (2, 2)] {
            let c = fibstep2(n, i).unwrap();
            assert!(c.verdict.is_valid(), "{n} {i}: {:?}", c.verdict);
        }
    }

    #[test]
    fn fibstep2_families_match_closed_form() {
        for n in 1..=3 {
            for i in 1..=n {
                let c = fibstep2(n, i).unwrap();
                for (k, e) in c.extensions.iter().take(n).enumerate() {
                    assert_eq!(e.family, fibstep2_family(n, i, n - k), "n={n} i={i} r={}", n - k);
                }
            }
        }
    }

    #[test]
    fn xi_small() {
        for n in 0..=1 {
            let (c, s) = xi(n).unwrap();
            assert!(s.verdict.is_valid(), "{n}: {:?}", s.verdict);
            assert!(c.verdict.is_valid(), "{n}: {:?}", c.verdict);
        }
    }
}

