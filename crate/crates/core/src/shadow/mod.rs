//! Purely formal engine for relative canonical shadows of separable covers:
//! points are labels, canonical divisors are opaque symbols unless an
//! expansion is supplied, and every Riemann-Hurwitz rewriting is an explicit
//! logged step. The shadow identities are formal divisor-algebra
//! consequences, so no function-field arithmetic is involved.

use crate::exactalg::ExactError;
use crate::fixtures::{parse_document, Section};
use std::collections::BTreeMap;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ShadowError {
    #[error("pullback expansion of {0} has degree {1}, expected the cover degree {2}")]
    PullbackDegree(String, i64, i64),
    #[error("label {0} missing from the pushforward table")]
    UnmappedLabel(String),
    #[error("label {0} missing from the pullback table")]
    MissingPullback(String),
    #[error("Riemann-Hurwitz inconsistency: 2g-2 = {0} but d(2g'-2) + deg R = {1}")]
    RiemannHurwitz(i64, i64),
    #[error("cover fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A formal divisor term: a point label on a named curve, the canonical
/// symbol of a named curve, or the pullback of the target's canonical symbol
/// along a named cover.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    Pt(String),
    K(String),
    PullK(String),
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Pt(s) => write!(f, "{s}"),
            Label::K(c) => write!(f, "K[{c}]"),
            Label::PullK(c) => write!(f, "pull*K[{c}]"),
        }
    }
}

/// Integer formal sum of labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelDivisor {
    pub terms: BTreeMap<Label, i64>,
}

impl LabelDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(name: &str, mult: i64) -> Self {
        let mut d = Self::zero();
        d.add(Label::Pt(name.to_string()), mult);
        d
    }

    pub fn add(&mut self, l: Label, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(l).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, m) in &o.terms {
            out.add(l.clone(), *m);
        }
        out
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        LabelDivisor {
            terms: self.terms.iter().map(|(l, m)| (l.clone(), m * k)).collect(),
        }
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scaled(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, l: &Label) -> i64 {
        self.terms.get(l).copied().unwrap_or(0)
    }
}

impl std::fmt::Display for LabelDivisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, m) in &self.terms {
            if first {
                write!(f, "{m}({l})")?;
            } else if *m >= 0 {
                write!(f, " + {m}({l})")?;
            } else {
                write!(f, " - {}({l})", -m)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Symbolic description of a separable cover phi: src -> tgt of curves.
#[derive(Debug, Clone)]
pub struct SymbolicCover {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub degree: i64,
    pub genus_src: i64,
    pub genus_tgt: i64,
    pub galois: bool,
    /// Ramification divisor on the source (point labels only).
    pub ram: LabelDivisor,
    /// phi(point) for every source label that may be pushed.
    pub push: BTreeMap<String, String>,
    /// phi^* of target point labels, as source divisors of degree = degree.
    pub pull: BTreeMap<String, LabelDivisor>,
    /// Optional expansions of the canonical symbols into point labels.
    pub k_src_expansion: Option<LabelDivisor>,
    pub k_tgt_expansion: Option<LabelDivisor>,
}

/// Shape classification of a computed shadow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    IdenticallyZero,
    /// Pullback of a divisor class on a genus-0 target: class-trivial.
    PullbackClass,
    General,
}

#[derive(Debug, Clone)]
pub struct ShadowResult {
    pub divisor: LabelDivisor,
    pub classification: Classification,
    /// Rewriting steps applied (Riemann-Hurwitz substitutions and the like).
    pub log: Vec<String>,
}

impl SymbolicCover {
    /// Degree of a formal divisor on the source of this cover.
    pub fn degree_on_src(&self, d: &LabelDivisor) -> i64 {
        d.terms
            .iter()
            .map(|(l, m)| {
                m * match l {
                    Label::Pt(_) => 1,
                    Label::K(c) if *c == self.src => 2 * self.genus_src - 2,
                    Label::K(_) => 0,
                    Label::PullK(c) if *c == self.name => self.degree * (2 * self.genus_tgt - 2),
                    Label::PullK(_) => 0,
                }
            })
            .sum()
    }

    pub fn validate(&self) -> Result<(), ShadowError> {
        for (b, exp) in &self.pull {
            let deg: i64 = exp
                .terms
                .iter()
                .map(|(l, m)| match l {
                    Label::Pt(_) => *m,
                    _ => 0,
                })
                .sum();
            if deg != self.degree {
                return Err(ShadowError::PullbackDegree(b.clone(), deg, self.degree));
            }
        }
        Ok(())
    }

    /// 2g - 2 = d(2g' - 2) + deg R.
    pub fn rh_check(&self) -> Result<(), ShadowError> {
        let lhs = 2 * self.genus_src - 2;
        let rhs = self.degree * (2 * self.genus_tgt - 2) + self.deg_ram();
        if lhs != rhs {
            return Err(ShadowError::RiemannHurwitz(lhs, rhs));
        }
        Ok(())
    }

    pub fn deg_ram(&self) -> i64 {
        self.ram.terms.values().sum()
    }

    /// Pointwise pushforward of point labels; K symbols are rejected here
    /// (push_along handles them through the explicit RH rewriting).
    pub fn push_points(&self, d: &LabelDivisor) -> Result<LabelDivisor, ShadowError> {
        let mut out = LabelDivisor::zero();
        for (l, m) in &d.terms {
            match l {
                Label::Pt(p) => {
                    let img = self
                        .push
                        .get(p)
                        .ok_or_else(|| ShadowError::UnmappedLabel(p.clone()))?;
                    out.add(Label::Pt(img.clone()), *m);
                }
                other => return Err(ShadowError::UnmappedLabel(other.to_string())),
            }
        }
        Ok(out)
    }

    /// phi^* of a target point divisor through the pullback table.
    pub fn pull_points(&self, d: &LabelDivisor) -> Result<LabelDivisor, ShadowError> {
        let mut out = LabelDivisor::zero();
        for (l, m) in &d.terms {
            match l {
                Label::Pt(p) => {
                    let exp = self
                        .pull
                        .get(p)
                        .ok_or_else(|| ShadowError::MissingPullback(p.clone()))?;
                    out = out.plus(&exp.scaled(*m));
                }
                other => return Err(ShadowError::MissingPullback(other.to_string())),
            }
        }
        Ok(out)
    }

    /// phi^* phi_* R computed from the tables.
    pub fn pull_push_ram(&self) -> Result<LabelDivisor, ShadowError> {
        self.pull_points(&self.push_points(&self.ram)?)
    }

    /// The relative canonical shadow
    /// D = d(2g'-2) R - deg(R) phi^*(K_tgt) + 2(dR - phi^* phi_* R),
    /// with the special cases simplified and logged.
    pub fn shadow(&self) -> Result<ShadowResult, ShadowError> {
        self.validate()?;
        self.rh_check()?;
        let d = self.degree;
        let g_t = self.genus_tgt;
        let deg_r = self.deg_ram();
        let mut log = vec![];

        if self.ram.is_zero() {
            log.push("etale cover: R = 0 makes every term vanish".into());
            let classification = if g_t == 0 {
                // genus-0 targets are always classified as pullbacks
                Classification::PullbackClass
            } else {
                Classification::IdenticallyZero
            };
            return Ok(ShadowResult { divisor: LabelDivisor::zero(), classification, log });
        }

        let pull_push = self.pull_push_ram()?;
        let correction = self.ram.scaled(d).minus(&pull_push).scaled(2);
        let mut divisor = self.ram.scaled(d * (2 * g_t - 2));
        divisor.add(Label::PullK(self.name.clone()), -deg_r);
        divisor = divisor.plus(&correction);

        assert_eq!(self.degree_on_src(&divisor), 0, "shadow terms cancel in degree");

        if g_t == 0 {
            log.push("genus-0 target: the shadow is a pullback from P^1, class-trivial".into());
            return Ok(ShadowResult {
                divisor,
                classification: Classification::PullbackClass,
                log,
            });
        }

        let galois_verified = self.galois && pull_push == self.ram.scaled(d);
        if galois_verified {
            log.push("Galois: phi^* phi_* R = dR verified from the tables".into());
            // rewrite phi^* K_tgt = K_src - R (Riemann-Hurwitz), giving the
            // (2g-2) R - deg(R) K_src form
            let mut rewritten = self.ram.scaled(2 * self.genus_src - 2);
            rewritten.add(Label::K(self.src.clone()), -deg_r);
            log.push(format!(
                "RH rewrite phi^*K[{}] = K[{}] - R applied: {}",
                self.tgt, self.src, rewritten
            ));
            if g_t == 1 {
                // K_tgt trivial and the Galois form collapses
                log.push("genus-1 Galois target: K trivial, shadow vanishes".into());
                return Ok(ShadowResult {
                    divisor: LabelDivisor::zero(),
                    classification: Classification::IdenticallyZero,
                    log,
                });
            }
            return Ok(ShadowResult {
                divisor: rewritten,
                classification: Classification::General,
                log,
            });
        }

        if g_t == 1 {
            // K_tgt trivial: D = 2dR - 2 phi^* phi_* R
            let divisor = self.ram.scaled(2 * d).minus(&pull_push.scaled(2));
            log.push("genus-1 target: K trivial, D = 2dR - 2 phi^*phi_*R".into());
            let classification = if divisor.is_zero() {
                Classification::IdenticallyZero
            } else {
                Classification::General
            };
            return Ok(ShadowResult { divisor, classification, log });
        }

        Ok(ShadowResult { divisor, classification: Classification::General, log })
    }

    /// Closed-form pushforward phi_*(D_phi) = d((2g'-2) phi_*(R) - deg(R) K_tgt),
    /// recomputed term-by-term from the shadow (with phi_* phi^* = d) and
    /// asserted equal.
    pub fn shadow_pushforward(&self) -> Result<LabelDivisor, ShadowError> {
        self.rh_check()?;
        let d = self.degree;
        let deg_r = self.deg_ram();
        let mut closed = if self.ram.is_zero() {
            LabelDivisor::zero()
        } else {
            self.push_points(&self.ram)?.scaled(d * (2 * self.genus_tgt - 2))
        };
        if deg_r != 0 {
            closed.add(Label::K(self.tgt.clone()), -d * deg_r);
        }
        // term-by-term: push the definitional shadow
        let term_by_term = {
            let pull_push = if self.ram.is_zero() {
                LabelDivisor::zero()
            } else {
                self.pull_push_ram()?
            };
            // phi_*(d(2g'-2) R) = d(2g'-2) phi_*(R)
            let mut acc = if self.ram.is_zero() {
                LabelDivisor::zero()
            } else {
                self.push_points(&self.ram)?.scaled(d * (2 * self.genus_tgt - 2))
            };
            // phi_*(-deg R phi^* K_tgt) = -d deg(R) K_tgt (phi_* phi^* = d)
            if !self.ram.is_zero() {
                acc.add(Label::K(self.tgt.clone()), -deg_r * d);
            }
            // phi_*(2 dR - 2 phi^* phi_* R) = 2d phi_* R - 2d phi_* R = 0
            if !self.ram.is_zero() {
                let a = self.push_points(&self.ram)?.scaled(2 * d);
                let b = self.push_points(&pull_push)?;
                // phi_*(phi^* phi_* R) = d phi_*(R): verify through the tables
                let direct = self.push_points(&self.ram)?.scaled(d).scaled(2);
                debug_assert_eq!(b.scaled(2), direct, "phi_* phi^* is multiplication by d");
                acc = acc.plus(&a.minus(&b.scaled(2)));
            }
            acc
        };
        assert_eq!(
            closed, term_by_term,
            "closed form equals the term-by-term derivation"
        );
        if self.genus_tgt == 1 {
            // deg K_tgt = 0 and the class is trivial; the pushforward with the
            // K expansion applied is the zero class
            if let Some(exp) = &self.k_tgt_expansion {
                let k_mult = closed.multiplicity(&Label::K(self.tgt.clone()));
                let mut expanded = closed.clone();
                expanded.add(Label::K(self.tgt.clone()), -k_mult);
                closed = expanded.plus(&exp.scaled(k_mult));
            }
        }
        Ok(closed)
    }

    /// Pushforward of an arbitrary source divisor that may mention K[src]:
    /// the Riemann-Hurwitz rewriting K[src] -> phi^*(K[tgt]) + R is applied
    /// first (logged), then everything is pushed pointwise with
    /// phi_* phi^* = d.
    pub fn push_along(&self, dv: &LabelDivisor, log: &mut Vec<String>) -> Result<LabelDivisor, ShadowError> {
        let mut points = LabelDivisor::zero();
        let mut out = LabelDivisor::zero();
        for (l, m) in &dv.terms {
            match l {
                Label::Pt(p) => points.add(Label::Pt(p.clone()), *m),
                Label::K(c) if *c == self.src => {
                    log.push(format!(
                        "RH rewrite K[{}] = phi^*K[{}] + R before pushing ({} copies)",
                        self.src, self.tgt, m
                    ));
                    // push(phi^* K_tgt) = d K_tgt; push(R) pointwise
                    out.add(Label::K(self.tgt.clone()), m * self.degree);
                    points = points.plus(&self.ram.scaled(*m));
                }
                Label::K(c) => {
                    // canonical symbol of an unrelated curve cannot be pushed
                    return Err(ShadowError::UnmappedLabel(Label::K(c.clone()).to_string()));
                }
                Label::PullK(c) if *c == self.name => {
                    out.add(Label::K(self.tgt.clone()), m * self.degree);
                }
                Label::PullK(c) => {
                    return Err(ShadowError::UnmappedLabel(Label::PullK(c.clone()).to_string()));
                }
            }
        }
        Ok(out.plus(&self.push_points(&points)?))
    }

    /// The Galois identity d(2g'-2)R - deg(R) phi^*K' = (2g-2)R - deg(R) K_src
    /// under the RH substitutions; returns the mismatch witness on failure.
    pub fn galois_identity_check(&self) -> Result<Option<LabelDivisor>, ShadowError> {
        self.rh_check()?;
        if self.ram.is_zero() {
            // both sides are zero for etale covers
            return Ok(None);
        }
        let pull_push = self.pull_push_ram()?;
        if !(self.galois && pull_push == self.ram.scaled(self.degree)) {
            return Ok(Some(pull_push.minus(&self.ram.scaled(self.degree))));
        }
        let d = self.degree;
        let deg_r = self.deg_ram();
        // lhs: d(2g'-2) R - deg(R) PullK; substitute PullK = K_src - R
        let mut lhs = self.ram.scaled(d * (2 * self.genus_tgt - 2));
        lhs = lhs.plus(&self.ram.scaled(deg_r));
        lhs.add(Label::K(self.src.clone()), -deg_r);
        // rhs: (2g-2) R - deg(R) K_src
        let mut rhs = self.ram.scaled(2 * self.genus_src - 2);
        rhs.add(Label::K(self.src.clone()), -deg_r);
        let diff = lhs.minus(&rhs);
        Ok(if diff.is_zero() { None } else { Some(diff) })
    }
}

/// Parse a cover fixture document. Format:
///
/// ```text
/// [cover phi]
/// source = C        # curve names
/// target = X
/// degree = 2
/// genus_source = 6
/// genus_target = 3
/// galois = true
/// ram = r1:1, r2:1
/// push = r1 -> b1
/// push = r2 -> b2
/// pull = b1 -> r1:2
/// pull = b2 -> r2:2
/// k_target = 2 p + 2 q      # optional expansion
/// ```
pub fn parse_cover(section: &Section) -> Result<SymbolicCover, ShadowError> {
    let name = section
        .header
        .get(1)
        .cloned()
        .ok_or_else(|| ShadowError::Fixture("cover section needs a name".into()))?;
    let req = |k: &str| -> Result<&str, ShadowError> {
        section
            .require(k)
            .map_err(|e| ShadowError::Fixture(e.to_string()))
    };
    let int = |k: &str| -> Result<i64, ShadowError> {
        req(k)?
            .trim()
            .parse::<i64>()
            .map_err(|_| ShadowError::Fixture(format!("bad integer for {k}")))
    };
    let mut ram = LabelDivisor::zero();
    if let Some(r) = section.get("ram") {
        for part in r.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (lbl, mult) = match part.split_once(':') {
                Some((l, m)) => (
                    l.trim().to_string(),
                    m.trim()
                        .parse::<i64>()
                        .map_err(|_| ShadowError::Fixture(format!("bad multiplicity in {part}")))?,
                ),
                None => (part.to_string(), 1),
            };
            ram.add(Label::Pt(lbl), mult);
        }
    }
    let mut push = BTreeMap::new();
    for line in section.all("push") {
        let (a, b) = line
            .split_once("->")
            .ok_or_else(|| ShadowError::Fixture(format!("push needs 'src -> tgt': {line}")))?;
        push.insert(a.trim().to_string(), b.trim().to_string());
    }
    let mut pull = BTreeMap::new();
    for line in section.all("pull") {
        let (b, expansion) = line
            .split_once("->")
            .ok_or_else(|| ShadowError::Fixture(format!("pull needs 'tgt -> terms': {line}")))?;
        let mut dv = LabelDivisor::zero();
        for part in expansion.split('+') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (lbl, mult) = match part.split_once(':') {
                Some((l, m)) => (
                    l.trim().to_string(),
                    m.trim()
                        .parse::<i64>()
                        .map_err(|_| ShadowError::Fixture(format!("bad multiplicity in {part}")))?,
                ),
                None => (part.to_string(), 1),
            };
            dv.add(Label::Pt(lbl), mult);
        }
        pull.insert(b.trim().to_string(), dv);
    }
    let galois = matches!(section.get("galois"), Some("true") | Some("yes") | Some("1"));
    let parse_expansion = |txt: &str| -> LabelDivisor {
        let mut dv = LabelDivisor::zero();
        for part in txt.split('+') {
            let part = part.trim();
            if part.is_empty() || part == "0" {
                continue;
            }
            let (m, l) = match part.split_once(' ') {
                Some((m, l)) if m.parse::<i64>().is_ok() => (m.parse::<i64>().unwrap(), l.trim()),
                _ => (1, part),
            };
            dv.add(Label::Pt(l.to_string()), m);
        }
        dv
    };
    let cover = SymbolicCover {
        name,
        src: req("source")?.to_string(),
        tgt: req("target")?.to_string(),
        degree: int("degree")?,
        genus_src: int("genus_source")?,
        genus_tgt: int("genus_target")?,
        galois,
        ram,
        push,
        pull,
        k_src_expansion: section.get("k_source").map(parse_expansion),
        k_tgt_expansion: section.get("k_target").map(parse_expansion),
    };
    cover.validate()?;
    Ok(cover)
}

/// Parse every `[cover <name>]` section of a fixture file.
pub fn parse_cover_file(src: &str) -> Result<Vec<SymbolicCover>, ShadowError> {
    let doc = parse_document(src).map_err(|e| ShadowError::Fixture(e.to_string()))?;
    let mut out = vec![];
    for section in &doc {
        if section.header.first().map(|s| s.as_str()) == Some("cover") {
            out.push(parse_cover(section)?);
        }
    }
    if out.is_empty() {
        return Err(ShadowError::Fixture("no [cover ...] sections found".into()));
    }
    Ok(out)
}

/// Deterministic pseudo-random covers for the property suites: consistent
/// ramification profiles, pushforward/pullback tables, and genera satisfying
/// Riemann-Hurwitz.
pub fn random_cover(seed: u64, force_galois: bool) -> SymbolicCover {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    let mut next = move |bound: u64| -> u64 {
        // xorshift*
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        state.wrapping_mul(0x2545_F491_4F6C_DD1D) % bound.max(1)
    };
    loop {
        let d = 1 + next(5) as i64; // 1..=5
        let g_t = next(4) as i64; // 0..=3
        let branches = next(4) as usize; // 0..=3
        let mut ram = LabelDivisor::zero();
        let mut push = BTreeMap::new();
        let mut pull = BTreeMap::new();
        let mut deg_r = 0i64;
        for b in 0..branches {
            let bname = format!("b{b}");
            // ramification profile over this branch point: parts summing to d
            let mut parts: Vec<i64> = vec![];
            if force_galois {
                let divisors: Vec<i64> = (1..=d).filter(|e| d % e == 0).collect();
                let e = divisors[next(divisors.len() as u64) as usize];
                for _ in 0..d / e {
                    parts.push(e);
                }
            } else {
                let mut rest = d;
                while rest > 0 {
                    let e = 1 + next(rest as u64) as i64;
                    parts.push(e);
                    rest -= e;
                }
            }
            let mut expansion = LabelDivisor::zero();
            for (i, e) in parts.iter().enumerate() {
                let rname = format!("r{b}_{i}");
                if *e > 1 {
                    ram.add(Label::Pt(rname.clone()), e - 1);
                    deg_r += e - 1;
                }
                push.insert(rname.clone(), bname.clone());
                expansion.add(Label::Pt(rname), *e);
            }
            pull.insert(bname, expansion);
        }
        if deg_r % 2 != 0 {
            continue;
        }
        let two_g_minus_2 = d * (2 * g_t - 2) + deg_r;
        if two_g_minus_2 < -2 || two_g_minus_2 % 2 != 0 {
            continue;
        }
        let g_s = (two_g_minus_2 + 2) / 2;
        if g_s < 0 {
            continue;
        }
        let galois = force_galois;
        return SymbolicCover {
            name: format!("rand{seed}"),
            src: "S".into(),
            tgt: "T".into(),
            degree: d,
            genus_src: g_s,
            genus_tgt: g_t,
            galois,
            ram,
            push,
            pull,
            k_src_expansion: None,
            k_tgt_expansion: None,
        };
    }
}
