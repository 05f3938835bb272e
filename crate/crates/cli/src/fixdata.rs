//! Typed loaders for the curve-family fixture documents. The fixture files
//! are versioned in the repository and embedded here as the defaults.

use shadowcert_core::exactalg::mpoly::{vars, MPoly, MRatio, Vars};
use shadowcert_core::exactalg::ExactError;
use shadowcert_core::fixtures::{
    parse_document, parse_poly, parse_proj_point, parse_ratio, split_top_level, Section,
};
use shadowcert_core::models::aut::CurveAutomorphism;
use shadowcert_core::models::curves::{AffineChart, AffineCurve, ChartPoint, ProjCurve};
use shadowcert_core::models::map::{ProjLinearAut, RationalMapP2};
use std::collections::BTreeMap;

pub const D12_FIXTURE: &str = include_str!("../../../fixtures/d12.fix");
pub const D12_COVERS: &str = include_str!("../../../fixtures/d12_covers.cover");
pub const S3_FIXTURE: &str = include_str!("../../../fixtures/s3.fix");
pub const S3_DOUBLE_COVER: &str = include_str!("../../../fixtures/covers/s3_double.cover");
pub const ETALE_COVER: &str = include_str!("../../../fixtures/covers/etale.cover");
pub const GENUS0_COVER: &str = include_str!("../../../fixtures/covers/genus0_target.cover");
pub const GENUS1_COVER: &str = include_str!("../../../fixtures/covers/genus1_galois.cover");

#[derive(Debug)]
pub struct AffineMap {
    pub from: String,
    pub to: String,
    /// images of the target coordinates in source primary-chart variables
    pub images: [MRatio; 2],
}

#[derive(Debug)]
pub struct Relation {
    pub name: String,
    pub curve: String,
    pub lhs: Vec<(String, u32)>,
    pub rhs: Vec<(String, u32)>,
}

#[derive(Debug, Default)]
pub struct D12Fixture {
    pub curves: BTreeMap<String, AffineCurve>,
    pub auts: BTreeMap<String, (String, CurveAutomorphism)>,
    pub relations: Vec<Relation>,
    pub maps: BTreeMap<String, AffineMap>,
    /// points on the elliptic fiber, coordinates rational in t
    pub et_points: BTreeMap<String, [MRatio; 2]>,
    /// chart points of the affine curves, by curve name then label
    pub curve_points: BTreeMap<String, BTreeMap<String, ChartPoint>>,
}

fn err(msg: impl Into<String>) -> ExactError {
    ExactError::Parse(msg.into())
}

fn curve_vars(sec: &Section) -> Result<(Vars, Vec<String>), ExactError> {
    let coords: Vec<String> = sec
        .require("vars")?
        .split_whitespace()
        .map(|s| s.to_string())
        .collect();
    if coords.len() != 2 {
        return Err(err("curve sections need exactly two coordinates"));
    }
    let params: Vec<String> = sec
        .get("params")
        .map(|p| p.split_whitespace().map(|s| s.to_string()).collect())
        .unwrap_or_default();
    let mut all = coords.clone();
    all.extend(params.clone());
    let refs: Vec<&str> = all.iter().map(|s| s.as_str()).collect();
    Ok((vars(&refs), params))
}

fn parse_affine_curve(sec: &Section) -> Result<AffineCurve, ExactError> {
    let name = sec.header.get(1).cloned().ok_or_else(|| err("curve needs a name"))?;
    let (vs, params) = curve_vars(sec)?;
    let f = parse_poly(sec.require("poly")?, &vs)?;
    let mut charts = vec![AffineChart {
        vars: vs.clone(),
        f,
        to_primary: identity_pair(&vs),
    }];
    if let (Some(cv), Some(cp), Some(tp)) = (
        sec.get("chart_vars"),
        sec.get("chart_poly"),
        sec.get("chart_to_primary"),
    ) {
        let ccoords: Vec<String> = cv.split_whitespace().map(|s| s.to_string()).collect();
        if ccoords.len() != 2 {
            return Err(err("chart_vars needs two coordinates"));
        }
        let mut all = ccoords;
        all.extend(params);
        let refs: Vec<&str> = all.iter().map(|s| s.as_str()).collect();
        let cvars = vars(&refs);
        let cf = parse_poly(cp, &cvars)?;
        let parts = split_top_level(tp);
        if parts.len() != 2 {
            return Err(err("chart_to_primary needs two expressions"));
        }
        let tp0 = parse_ratio(&parts[0], &cvars)?;
        let tp1 = parse_ratio(&parts[1], &cvars)?;
        charts.push(AffineChart { vars: cvars, f: cf, to_primary: [tp0, tp1] });
    }
    Ok(AffineCurve { name, charts })
}

fn identity_pair(vs: &Vars) -> [MRatio; 2] {
    let one = MPoly::one(vs);
    [
        MRatio { num: MPoly::var(vs, &vs[0]).unwrap(), den: one.clone() },
        MRatio { num: MPoly::var(vs, &vs[1]).unwrap(), den: one },
    ]
}

/// Parse comma-separated coordinate expressions, resolving `let` bindings
/// declared earlier in the section by substitution at bind time.
fn parse_with_lets(sec: &Section, vs: &Vars, key: &str) -> Result<Vec<MRatio>, ExactError> {
    // extended variable list grows with each let
    let mut names: Vec<String> = vs.iter().cloned().collect();
    let mut bound: Vec<(MPoly, MPoly)> = vec![]; // eliminated images over vs
    for (k, v) in &sec.entries {
        // a `let u = expr` line parses as key "let u", value "expr"
        let Some(name) = k.strip_prefix("let ") else {
            continue;
        };
        let name = name.trim().to_string();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let ext = vars(&refs);
        let parsed = parse_ratio(v.trim(), &ext)?;
        // substitute previously bound symbols away
        let images = elimination_images(vs, &names, &bound)?;
        let (nn, nd) = parsed.num.subst_rational(&images)?;
        let (dn, dd) = parsed.den.subst_rational(&images)?;
        let r = MRatio { num: nn.mul(&dd), den: nd.mul(&dn) }.cancel_monomial_content();
        bound.push((r.num, r.den));
        names.push(name);
    }
    let raw = sec.require(key)?;
    let parts = split_top_level(raw);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ext = vars(&refs);
    let images = elimination_images(vs, &names, &bound)?;
    let mut out = vec![];
    for p in &parts {
        let parsed = parse_ratio(p, &ext)?;
        let (nn, nd) = parsed.num.subst_rational(&images)?;
        let (dn, dd) = parsed.den.subst_rational(&images)?;
        out.push(MRatio { num: nn.mul(&dd), den: nd.mul(&dn) }.cancel_monomial_content());
    }
    Ok(out)
}

fn elimination_images(
    vs: &Vars,
    names: &[String],
    bound: &[(MPoly, MPoly)],
) -> Result<Vec<(MPoly, MPoly)>, ExactError> {
    let mut images = vec![];
    for (i, n) in names.iter().enumerate() {
        if i < vs.len() {
            images.push((MPoly::var(vs, n)?, MPoly::one(vs)));
        } else {
            images.push(bound[i - vs.len()].clone());
        }
    }
    Ok(images)
}

fn parse_words(s: &str) -> Result<Vec<(String, u32)>, ExactError> {
    let mut out = vec![];
    for w in s.split_whitespace() {
        match w.split_once('^') {
            Some((name, e)) => out.push((
                name.to_string(),
                e.parse().map_err(|_| err(format!("bad power in {w}")))?,
            )),
            None => out.push((w.to_string(), 1)),
        }
    }
    Ok(out)
}

fn parse_chart_point(src: &str, pvars: &Vars) -> Result<ChartPoint, ExactError> {
    let s = src.trim();
    let (chart, rest) = match s.strip_prefix("chart1") {
        Some(r) => (1usize, r.trim()),
        None => (0usize, s),
    };
    let coords = shadowcert_core::fixtures::parse_affine_point(rest, pvars)?;
    Ok(ChartPoint { chart, coords })
}

pub fn load_d12(text: &str) -> Result<D12Fixture, ExactError> {
    let doc = parse_document(text)?;
    let mut fx = D12Fixture::default();
    for sec in &doc {
        match sec.header.first().map(|s| s.as_str()) {
            Some("curve") => {
                let c = parse_affine_curve(sec)?;
                fx.curves.insert(c.name.clone(), c);
            }
            Some("aut") => {
                // header: aut NAME on CURVE
                let name = sec.header.get(1).cloned().ok_or_else(|| err("aut needs a name"))?;
                let curve = sec.header.get(3).cloned().ok_or_else(|| err("aut needs 'on CURVE'"))?;
                let cv = fx
                    .curves
                    .get(&curve)
                    .ok_or_else(|| err(format!("aut references unknown curve {curve}")))?;
                let vs = cv.charts[0].vars.clone();
                let parts = split_top_level(sec.require("map")?);
                if parts.len() != 2 {
                    return Err(err("aut map needs two expressions"));
                }
                let order: u32 = sec
                    .require("order")?
                    .parse()
                    .map_err(|_| err("bad aut order"))?;
                let a = CurveAutomorphism {
                    name: name.clone(),
                    declared_order: order,
                    subst: [parse_ratio(&parts[0], &vs)?, parse_ratio(&parts[1], &vs)?],
                    vars: vs,
                };
                fx.auts.insert(name, (curve, a));
            }
            Some("relation") => {
                fx.relations.push(Relation {
                    name: sec.header.get(1).cloned().unwrap_or_default(),
                    curve: sec.header.get(3).cloned().unwrap_or_default(),
                    lhs: parse_words(sec.require("lhs")?)?,
                    rhs: parse_words(sec.require("rhs")?)?,
                });
            }
            Some("map") => {
                // header: map NAME from SRC to TGT
                let name = sec.header.get(1).cloned().ok_or_else(|| err("map needs a name"))?;
                let from = sec.header.get(3).cloned().ok_or_else(|| err("map needs 'from'"))?;
                let to = sec.header.get(5).cloned().ok_or_else(|| err("map needs 'to'"))?;
                let cv = fx
                    .curves
                    .get(&from)
                    .ok_or_else(|| err(format!("map from unknown curve {from}")))?;
                let vs = cv.charts[0].vars.clone();
                let images = parse_with_lets(sec, &vs, "images")?;
                if images.len() != 2 {
                    return Err(err("map images need two expressions"));
                }
                fx.maps.insert(
                    name,
                    AffineMap { from, to, images: [images[0].clone(), images[1].clone()] },
                );
            }
            Some("points") => {
                let target = sec.header.get(1).cloned().ok_or_else(|| err("points need a target"))?;
                if target == "Et" {
                    let pvars = vars(&["t"]);
                    for (k, v) in &sec.entries {
                        let c = shadowcert_core::fixtures::parse_affine_point(v, &pvars)?;
                        fx.et_points.insert(k.clone(), c);
                    }
                } else {
                    let pvars = vars(&["t"]);
                    let table = fx.curve_points.entry(target).or_default();
                    for (k, v) in &sec.entries {
                        table.insert(k.clone(), parse_chart_point(v, &pvars)?);
                    }
                }
            }
            _ => {}
        }
    }
    Ok(fx)
}

#[derive(Debug, Default)]
pub struct S3Fixture {
    pub proj: BTreeMap<String, ProjCurve>,
    pub proj_auts: BTreeMap<String, (String, ProjLinearAut)>,
    pub proj_maps: BTreeMap<String, (String, String, RationalMapP2)>,
    /// symbolic points over (u, w) by curve name
    pub proj_points: BTreeMap<String, BTreeMap<String, [MPoly; 3]>>,
}

pub fn load_s3(text: &str) -> Result<S3Fixture, ExactError> {
    let doc = parse_document(text)?;
    let mut fx = S3Fixture::default();
    for sec in &doc {
        match sec.header.first().map(|s| s.as_str()) {
            Some("proj") => {
                let name = sec.header.get(1).cloned().ok_or_else(|| err("proj needs a name"))?;
                let coords: Vec<String> = sec
                    .require("vars")?
                    .split_whitespace()
                    .map(|s| s.to_string())
                    .collect();
                let params: Vec<String> = sec
                    .get("params")
                    .map(|p| p.split_whitespace().map(|s| s.to_string()).collect())
                    .unwrap_or_default();
                let mut all = coords;
                all.extend(params);
                let refs: Vec<&str> = all.iter().map(|s| s.as_str()).collect();
                let vs = vars(&refs);
                let degree: u32 = sec.require("degree")?.parse().map_err(|_| err("bad degree"))?;
                let f = parse_poly(sec.require("poly")?, &vs)?;
                let curve = ProjCurve::new(&name, vs, f, degree)
                    .map_err(|e| err(format!("{name}: {e}")))?;
                fx.proj.insert(name, curve);
            }
            Some("projaut") => {
                let name = sec.header.get(1).cloned().ok_or_else(|| err("projaut needs a name"))?;
                let curve = sec.header.get(3).cloned().unwrap_or_default();
                let order: u32 = sec.require("order")?.parse().map_err(|_| err("bad order"))?;
                let rows = sec.all("row");
                if rows.len() != 3 {
                    return Err(err("projaut needs three rows"));
                }
                let mut m: Vec<[shadowcert_core::CycNum; 3]> = vec![];
                for r in rows {
                    let parts = split_top_level(r);
                    if parts.len() != 3 {
                        return Err(err("projaut row needs three entries"));
                    }
                    m.push([
                        shadowcert_core::fixtures::parse_cyc(&parts[0])?,
                        shadowcert_core::fixtures::parse_cyc(&parts[1])?,
                        shadowcert_core::fixtures::parse_cyc(&parts[2])?,
                    ]);
                }
                let aut = ProjLinearAut {
                    name: name.clone(),
                    declared_order: order,
                    m: [m[0].clone(), m[1].clone(), m[2].clone()],
                };
                fx.proj_auts.insert(name, (curve, aut));
            }
            Some("projmap") => {
                let name = sec.header.get(1).cloned().ok_or_else(|| err("projmap needs a name"))?;
                let from = sec.header.get(3).cloned().unwrap_or_default();
                let to = sec.header.get(5).cloned().unwrap_or_default();
                let vs = vars(&["X", "Y", "Z"]);
                let comps = parse_proj_point(sec.require("images")?, &vs)?;
                fx.proj_maps.insert(
                    name.clone(),
                    (from, to, RationalMapP2 { name, comps }),
                );
            }
            Some("projpoints") => {
                let target = sec.header.get(1).cloned().unwrap_or_default();
                let pvars = vars(&["u", "w"]);
                let table = fx.proj_points.entry(target).or_default();
                for (k, v) in &sec.entries {
                    table.insert(k.clone(), parse_proj_point(v, &pvars)?);
                }
            }
            _ => {}
        }
    }
    Ok(fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d12_fixture_loads() {
        let fx = load_d12(D12_FIXTURE).unwrap();
        assert!(fx.curves.contains_key("Ct"));
        assert!(fx.curves.contains_key("Yt"));
        assert_eq!(fx.curves["Ct"].charts.len(), 2);
        assert!(fx.auts.contains_key("sigma"));
        assert!(fx.maps.contains_key("piE"));
        assert!(fx.et_points.contains_key("P1"));
        assert_eq!(fx.relations.len(), 1);
    }

    #[test]
    fn s3_fixture_loads() {
        let fx = load_s3(S3_FIXTURE).unwrap();
        assert!(fx.proj.contains_key("fuw"));
        assert!(fx.proj_auts.contains_key("sigma1"));
        assert!(fx.proj_maps.contains_key("psitau"));
        assert!(fx.proj_points["listed21"].contains_key("psi1_Aprime_listed"));
    }
}
