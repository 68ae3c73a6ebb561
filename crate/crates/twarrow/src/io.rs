//! Canonical JSON documents and DOT drawings.
//!
//! Every export first renumbers simplices dimension by dimension, ordered by
//! vertex labels (ties broken by the renumbered faces), so two runs on
//! isomorphic inputs built the same way produce identical bytes. Object keys
//! come out sorted.

use crate::error::{Error, Result};
use crate::fibration::FibrationReport;
use crate::scaled::{
    generator, AnodyneCertificate, CertificateStep, DecoratedSet, DecorationKind, GeneratorClass, ScaledInclusion,
};
use crate::sset::{FinitePoset, Simplex, SimplexId, SimplicialMap, SimplicialSet};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt::Write;

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

/// Old-to-new index tables for the canonical numbering.
fn canonical_order(x: &SimplicialSet) -> Vec<Vec<usize>> {
    let mut o2n: Vec<Vec<usize>> = Vec::new();
    for d in 0..x.counts().len() {
        let rename = |s: &Simplex, o2n: &[Vec<usize>]| (s.base.dim, o2n[s.base.dim][s.base.idx], s.word.clone());
        let mut keyed: Vec<_> = x
            .ids(d)
            .map(|id| {
                let labels: Vec<&str> = x.verts_of(id).iter().map(|&v| x.label(v)).collect();
                let faces: Vec<_> = if d == 0 { Vec::new() } else { x.faces_of(id).iter().map(|f| rename(f, &o2n)).collect() };
                (labels, faces, id.idx)
            })
            .collect();
        keyed.sort();
        let mut level = vec![0; keyed.len()];
        for (new, (_, _, old)) in keyed.into_iter().enumerate() {
            level[old] = new;
        }
        o2n.push(level);
    }
    o2n
}

fn rename(o2n: &[Vec<usize>], s: &Simplex) -> Simplex {
    Simplex { word: s.word.clone(), base: SimplexId::new(s.base.dim, o2n[s.base.dim][s.base.idx]) }
}

/// The canonically numbered copy of `x` and the isomorphism onto it.
pub fn canonical(x: &SimplicialSet) -> Result<(SimplicialSet, SimplicialMap)> {
    let o2n = canonical_order(x);
    let n2o: Vec<Vec<usize>> = o2n
        .iter()
        .map(|l| {
            let mut inv = vec![0; l.len()];
            for (old, &new) in l.iter().enumerate() {
                inv[new] = old;
            }
            inv
        })
        .collect();
    let labels = n2o.first().map_or(Vec::new(), |l| l.iter().map(|&v| x.label(v).to_string()).collect());
    let faces = n2o
        .iter()
        .enumerate()
        .map(|(d, l)| {
            l.iter()
                .map(|&old| if d == 0 { Vec::new() } else { x.faces_of(SimplexId::new(d, old)).iter().map(|f| rename(&o2n, f)).collect() })
                .collect()
        })
        .collect();
    let y = SimplicialSet::from_face_table(labels, faces)?;
    let assign = o2n.iter().enumerate().map(|(d, l)| l.iter().map(|&n| Simplex::nondeg(SimplexId::new(d, n))).collect()).collect();
    let iso = SimplicialMap::new(x.clone(), y.clone(), assign)?;
    Ok((y, iso))
}

fn complex_value(x: &SimplicialSet, o2n: &[Vec<usize>]) -> Value {
    let mut labels = serde_json::Map::new();
    for v in 0..x.count(0) {
        labels.insert(o2n[0][v].to_string(), json!(x.label(v)));
    }
    let simplices: Vec<Value> = (0..x.counts().len())
        .map(|d| {
            let mut level: Vec<(usize, Value)> = x
                .ids(d)
                .map(|id| {
                    let faces: Vec<Value> = if d == 0 {
                        Vec::new()
                    } else {
                        x.faces_of(id)
                            .iter()
                            .map(|f| json!({ "word": f.word, "base": o2n[f.base.dim][f.base.idx] }))
                            .collect()
                    };
                    let new = o2n[d][id.idx];
                    (new, json!({ "id": new, "faces": faces }))
                })
                .collect();
            level.sort_by_key(|(k, _)| *k);
            Value::Array(level.into_iter().map(|(_, v)| v).collect())
        })
        .collect();
    json!({ "top_dim": x.top_dim(), "simplices": simplices, "labels": labels })
}

fn simplex_value(o2n: &[Vec<usize>], s: &Simplex) -> Value {
    let r = rename(o2n, s);
    json!({ "word": r.word, "base": { "dim": r.base.dim, "idx": r.base.idx } })
}

pub fn complex_to_json(x: &SimplicialSet) -> Value {
    complex_value(x, &canonical_order(x))
}

fn decorated_value(x: &DecoratedSet, o2n: &[Vec<usize>]) -> Value {
    let d = x.kind.dim();
    let cells: BTreeSet<usize> = x.cells().iter().map(|&c| o2n[d][c]).collect();
    let kind = match x.kind {
        DecorationKind::Scaling => "scaling",
        DecorationKind::Marking => "marking",
    };
    json!({ "complex": complex_value(&x.base, o2n), "decoration": kind, "cells": cells })
}

pub fn decorated_to_json(x: &DecoratedSet) -> Value {
    decorated_value(x, &canonical_order(&x.base))
}

pub fn map_to_json(f: &SimplicialMap) -> Value {
    let (sx, tx) = (canonical_order(f.source()), canonical_order(f.target()));
    let images: Vec<Value> = (0..f.source().counts().len())
        .map(|d| {
            let mut level: Vec<(usize, Value)> = f
                .source()
                .ids(d)
                .map(|id| (sx[d][id.idx], simplex_value(&tx, f.image(id))))
                .collect();
            level.sort_by_key(|(k, _)| *k);
            Value::Array(level.into_iter().map(|(_, v)| v).collect())
        })
        .collect();
    json!({
        "source": complex_value(f.source(), &sx),
        "target": complex_value(f.target(), &tx),
        "images": images,
    })
}

pub fn poset_to_json(p: &FinitePoset) -> Value {
    let covers: Vec<[usize; 2]> = p.covers().into_iter().map(|(a, b)| [a, b]).collect();
    json!({ "elements": p.names(), "covers": covers })
}

/// A certificate with the inclusion it certifies.
pub fn certificate_to_json(incl: &ScaledInclusion, cert: &AnodyneCertificate, valid: Option<bool>) -> Value {
    let o2n = canonical_order(&incl.target.base);
    let start: BTreeSet<(usize, usize)> = incl.sub.iter().map(|id| (id.dim, o2n[id.dim][id.idx])).collect();
    let start_thin: BTreeSet<usize> = incl.sub_thin.iter().map(|&c| o2n[2][c]).collect();
    let steps: Vec<Value> = cert
        .steps
        .iter()
        .map(|s| {
            json!({
                "class": s.generator.class.tag(),
                "n": s.generator.n,
                "i": s.generator.i,
                "thin": s.generator.thin,
                "attach": simplex_value(&o2n, &s.attach),
            })
        })
        .collect();
    let mut doc = json!({
        "start": { "simplices": start, "thin": start_thin },
        "steps": steps,
        "end": decorated_value(&incl.target, &o2n),
    });
    if let Some(v) = valid {
        doc["valid"] = json!(v);
    }
    doc
}

pub fn report_to_json(r: &FibrationReport) -> Value {
    json!({
        "property": r.property,
        "max_dim": r.max_dim,
        "squares": r.squares,
        "verdict": if r.passed() { "pass" } else { "fail" },
        "counterexample": r.counterexample.as_ref().map(|c| c.summary()),
        "note": r.note,
    })
}

/// Pretty-printed with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn usizes(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))?.iter().map(|x| usize_of(x, what)).collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key}")))
}

fn simplex_of(v: &Value) -> Result<Simplex> {
    serde_json::from_value(v.clone()).map_err(|e| bad(format!("simplex: {e}")))
}

pub fn complex_from_json(v: &Value) -> Result<SimplicialSet> {
    let levels = field(v, "simplices")?.as_array().ok_or_else(|| bad("simplices must be an array"))?;
    let nv = levels.first().and_then(|l| l.as_array()).map_or(0, |l| l.len());
    let labels_obj = field(v, "labels")?.as_object().ok_or_else(|| bad("labels must be an object"))?;
    let mut labels = vec![None; nv];
    for (k, l) in labels_obj {
        let i: usize = k.parse().map_err(|_| bad(format!("label key {k} is not a vertex id")))?;
        let slot = labels.get_mut(i).ok_or_else(|| bad(format!("label for unknown vertex {i}")))?;
        *slot = Some(l.as_str().ok_or_else(|| bad("labels must be strings"))?.to_string());
    }
    let labels: Vec<String> = labels.into_iter().enumerate().map(|(i, l)| l.unwrap_or_else(|| i.to_string())).collect();
    let mut faces = Vec::new();
    for (d, level) in levels.iter().enumerate() {
        let level = level.as_array().ok_or_else(|| bad("each dimension must be an array"))?;
        let mut out = Vec::new();
        for (k, s) in level.iter().enumerate() {
            if usize_of(field(s, "id")?, "id")? != k {
                return Err(bad(format!("ids in dimension {d} must be 0, 1, …")));
            }
            let fs = field(s, "faces")?.as_array().ok_or_else(|| bad("faces must be an array"))?;
            let fs = fs
                .iter()
                .map(|f| {
                    let base = usize_of(field(f, "base")?, "base")?;
                    let word = usizes(field(f, "word")?, "word")?;
                    if d == 0 {
                        return Err(bad("vertices have no faces"));
                    }
                    let dim = (d - 1).checked_sub(word.len()).ok_or_else(|| bad("face word too long"))?;
                    Ok(Simplex { word, base: SimplexId::new(dim, base) })
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(fs);
        }
        faces.push(out);
    }
    let x = SimplicialSet::from_face_table(labels, faces)?;
    if let Some(td) = field(v, "top_dim")?.as_u64() {
        if x.top_dim() != Some(td as usize) {
            return Err(bad("top_dim disagrees with the simplices"));
        }
    }
    Ok(x)
}

pub fn decorated_from_json(v: &Value) -> Result<DecoratedSet> {
    let base = complex_from_json(field(v, "complex")?)?;
    let kind = match field(v, "decoration")?.as_str() {
        Some("scaling") => DecorationKind::Scaling,
        Some("marking") => DecorationKind::Marking,
        _ => return Err(bad("decoration must be scaling or marking")),
    };
    DecoratedSet::new(base, kind, usizes(field(v, "cells")?, "cells")?)
}

pub fn map_from_json(v: &Value) -> Result<SimplicialMap> {
    let source = complex_from_json(field(v, "source")?)?;
    let target = complex_from_json(field(v, "target")?)?;
    let images = field(v, "images")?.as_array().ok_or_else(|| bad("images must be an array"))?;
    let assign = images
        .iter()
        .map(|l| l.as_array().ok_or_else(|| bad("images per dimension")).and_then(|l| l.iter().map(simplex_of).collect()))
        .collect::<Result<Vec<Vec<Simplex>>>>()?;
    if assign.len() != source.counts().len() || assign.iter().zip(source.counts()).any(|(a, c)| a.len() != c) {
        return Err(bad("images do not match the source"));
    }
    for s in assign.iter().flatten() {
        if !target.contains(s.base) || !s.is_normal() {
            return Err(bad(format!("image {s} is not a simplex of the target")));
        }
    }
    SimplicialMap::new(source, target, assign)
}

pub fn poset_from_json(v: &Value) -> Result<FinitePoset> {
    let names: Vec<String> = serde_json::from_value(field(v, "elements")?.clone()).map_err(|e| bad(format!("elements: {e}")))?;
    let covers: Vec<(usize, usize)> =
        serde_json::from_value(field(v, "covers")?.clone()).map_err(|e| bad(format!("covers: {e}")))?;
    FinitePoset::from_relations(names, &covers)
}

pub fn certificate_from_json(v: &Value) -> Result<(ScaledInclusion, AnodyneCertificate)> {
    let target = decorated_from_json(field(v, "end")?)?;
    let start = field(v, "start")?;
    let sub = field(start, "simplices")?
        .as_array()
        .ok_or_else(|| bad("start simplices"))?
        .iter()
        .map(|p| {
            let p = usizes(p, "start simplex")?;
            match p[..] {
                [d, i] => Ok(SimplexId::new(d, i)),
                _ => Err(bad("start simplices are [dim, idx] pairs")),
            }
        })
        .collect::<Result<BTreeSet<_>>>()?;
    let sub_thin = usizes(field(start, "thin")?, "thin")?.into_iter().collect();
    let incl = ScaledInclusion { target, sub, sub_thin };
    if !incl.is_subcomplex() {
        return Err(bad("start is not a scaled subcomplex of end"));
    }
    let steps = field(v, "steps")?
        .as_array()
        .ok_or_else(|| bad("steps must be an array"))?
        .iter()
        .map(|s| {
            let class = GeneratorClass::from_tag(field(s, "class")?.as_str().ok_or_else(|| bad("class tag"))?);
            let n = usize_of(field(s, "n")?, "n")?;
            let i = usize_of(field(s, "i")?, "i")?;
            let thin: Vec<[usize; 3]> =
                serde_json::from_value(field(s, "thin")?.clone()).map_err(|e| bad(format!("thin: {e}")))?;
            let attach = simplex_of(field(s, "attach")?)?;
            Ok(CertificateStep { generator: generator(class, n, i, &thin)?, attach })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((incl, AnodyneCertificate { steps }))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The 1-skeleton; edges in `marked` are drawn bold.
pub fn complex_to_dot(name: &str, x: &SimplicialSet, marked: Option<&DecoratedSet>) -> String {
    let o2n = canonical_order(x);
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", dot_escape(name)).unwrap();
    let mut verts: Vec<(usize, usize)> = (0..x.count(0)).map(|v| (o2n[0][v], v)).collect();
    verts.sort();
    for (n, v) in verts {
        writeln!(out, "  v{n} [label=\"{}\"];", dot_escape(x.label(v))).unwrap();
    }
    let mut edges: Vec<(usize, usize, usize, bool)> = x
        .ids(1)
        .map(|e| {
            let vs = x.verts_of(e);
            let bold = marked.is_some_and(|m| m.kind == DecorationKind::Marking && m.contains(e.idx));
            (o2n[1][e.idx], o2n[0][vs[0]], o2n[0][vs[1]], bold)
        })
        .collect();
    edges.sort();
    for (_, a, b, bold) in edges {
        let style = if bold { " [style=bold]" } else { "" };
        writeln!(out, "  v{a} -> v{b}{style};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram, elements in their given order.
pub fn poset_to_dot(name: &str, p: &FinitePoset) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", dot_escape(name)).unwrap();
    for a in 0..p.len() {
        writeln!(out, "  v{a} [label=\"{}\"];", dot_escape(p.name(a))).unwrap();
    }
    let mut covers = p.covers();
    covers.sort();
    for (a, b) in covers {
        writeln!(out, "  v{a} -> v{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaled::verify_certificate;
    use crate::sset::{isomorphic, nerve, product, standard};
    use crate::zoo::{r_poset, zoo_level, SimplexObject, ZooName};

    #[test]
    fn q1_document_is_stable() {
        let q = SimplexObject::Q.level(1).unwrap().set;
        let a = to_text(&decorated_to_json(&q));
        let b = to_text(&decorated_to_json(&SimplexObject::Q.level(1).unwrap().set));
        assert_eq!(a, b);
        let back = decorated_from_json(&parse(&a).unwrap()).unwrap();
        assert_eq!(to_text(&decorated_to_json(&back)), a);
        assert_eq!(back.cells().len(), 2);
        // keys come out sorted
        let cells = a.find("\"cells\"").unwrap();
        let complex = a.find("\"complex\"").unwrap();
        let decoration = a.find("\"decoration\"").unwrap();
        assert!(cells < complex && complex < decoration);
    }

    #[test]
    fn zoo_round_trip() {
        for name in ZooName::all() {
            for n in 0..=2 {
                let Ok(level) = zoo_level(name, n, None) else { continue };
                let doc = decorated_to_json(&level.set);
                let back = decorated_from_json(&parse(&to_text(&doc)).unwrap()).unwrap();
                let iso = isomorphic(&level.set.base, &back.base).expect("isomorphic");
                assert!(level.set.preserved_by(&iso, &back), "{name:?} {n}");
                assert_eq!(level.set.count(), back.count());
            }
        }
    }

    #[test]
    fn canonical_ids_follow_labels() {
        let p = FinitePoset::from_relations(vec!["b".into(), "a".into()], &[(1, 0)]).unwrap();
        let (c, iso) = canonical(&nerve(&p)).unwrap();
        assert_eq!(c.labels(), ["a", "b"]);
        assert!(iso.is_isomorphism());
    }

    #[test]
    fn maps_round_trip() {
        let pr = product(&standard(1), &standard(2));
        let doc = to_text(&map_to_json(&pr.pr2));
        let f = map_from_json(&parse(&doc).unwrap()).unwrap();
        assert_eq!(f.source().counts(), pr.set.counts());
        assert_eq!(to_text(&map_to_json(&f)), doc);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let mut v = complex_to_json(&standard(2));
        v["simplices"][2][0]["faces"][0]["base"] = json!(9);
        assert!(complex_from_json(&v).is_err());
        let mut v = complex_to_json(&standard(2));
        v["simplices"][2][0]["faces"][0]["base"] = json!(1);
        assert!(complex_from_json(&v).is_err());
        assert!(parse("{").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let c = crate::anodyne::fibstep1(1, 1).unwrap();
        let doc = to_text(&certificate_to_json(&c.inclusion, &c.certificate, Some(c.verdict.is_valid())));
        let (incl, cert) = certificate_from_json(&parse(&doc).unwrap()).unwrap();
        assert!(verify_certificate(&cert, &incl).unwrap().is_valid());
        assert_eq!(cert.len(), c.certificate.len());
    }

    #[test]
    fn dot_shapes() {
        let c = crate::scaled::scale(&standard(1), crate::scaled::Decoration::Sharp).unwrap();
        let t = crate::tw::tw(&c, 1).unwrap();
        let dot = complex_to_dot("tw", &t.nerve.set, Some(&t.marked));
        assert_eq!(dot.matches("label=").count(), 3);
        assert_eq!(dot.matches("->").count(), 2);
        assert_eq!(dot.matches("style=bold").count(), t.marked.count());
        let back = poset_from_json(&poset_to_json(&r_poset(1))).unwrap();
        assert_eq!(back.covers().len(), r_poset(1).covers().len());
        let r = poset_to_dot("R1", &r_poset(1));
        assert_eq!(r.matches("label=").count(), 12);
    }
}
