//! Covers of the thrice-punctured projective line as permutation triples.
//!
//! A degree-`d` cover branched only over `{0, 1, ∞}` is encoded by its
//! monodromy: three permutations of the sheets `{1, .., d}`, one per branch
//! point, whose product is the identity and which generate a transitive
//! group (connectedness). From this combinatorial datum the module derives
//! the cusps (cycles over each branch point), their ramification indices,
//! and the genus via Riemann-Hurwitz.

use std::fmt;

use rigor::{CertResult, Interval};
use serde::Deserialize;
use thiserror::Error;

/// Ways a permutation triple can fail to describe a cover.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DessinError {
    #[error("a permutation must act on at least one sheet")]
    EmptyPermutation,
    #[error("image {value} is outside the sheet range 1..={degree}")]
    ImageOutOfRange { value: u64, degree: usize },
    #[error("not a bijection: sheet {value} is hit twice")]
    NotBijective { value: u32 },
    #[error("{which} acts on {found} sheets but the triple declares degree {expected}")]
    SizeMismatch {
        which: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("s0*s1*sinf is not the identity: it moves sheet {sheet} to {image}")]
    NonIdentityProduct { sheet: u32, image: u32 },
    #[error("monodromy is not transitive: only {orbit} of {degree} sheets are reachable from sheet 1")]
    NotTransitive { orbit: usize, degree: usize },
    #[error("cannot parse triple: {0}")]
    Parse(String),
}

/// A permutation of the sheets `{1, .., d}`.
///
/// Sheets are 1-based in every public signature; storage is 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(d: usize) -> Permutation {
        Permutation {
            images: (0..d as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i]` is where sheet
    /// `i + 1` goes.
    pub fn from_images(images: &[u32]) -> Result<Permutation, DessinError> {
        let d = images.len();
        if d == 0 {
            return Err(DessinError::EmptyPermutation);
        }
        let mut hit = vec![false; d];
        let mut internal = Vec::with_capacity(d);
        for &v in images {
            if v == 0 || v as usize > d {
                return Err(DessinError::ImageOutOfRange {
                    value: v as u64,
                    degree: d,
                });
            }
            if hit[v as usize - 1] {
                return Err(DessinError::NotBijective { value: v });
            }
            hit[v as usize - 1] = true;
            internal.push(v - 1);
        }
        Ok(Permutation { images: internal })
    }

    /// Parses disjoint-cycle notation such as `(1 2 3)(4 6)`, acting on
    /// `{1, .., d}`. Fixed points may be omitted; commas may separate
    /// entries; `id` and `()` both denote the identity.
    pub fn from_cycles(text: &str, d: usize) -> Result<Permutation, DessinError> {
        if d == 0 {
            return Err(DessinError::EmptyPermutation);
        }
        let t = text.trim();
        let mut perm = Permutation::identity(d);
        if t == "id" {
            return Ok(perm);
        }
        let mut moved = vec![false; d];
        let mut chunks = t.split(')').collect::<Vec<_>>();
        match chunks.pop() {
            Some(rest) if rest.trim().is_empty() => {}
            _ => {
                return Err(DessinError::Parse(format!(
                    "cycle notation must end with ')': {t:?}"
                )))
            }
        }
        if chunks.is_empty() {
            return Err(DessinError::Parse(format!("expected cycles, got {t:?}")));
        }
        for chunk in chunks {
            let inner = chunk.trim();
            let inner = inner.strip_prefix('(').ok_or_else(|| {
                DessinError::Parse(format!("expected '(' to open a cycle in {t:?}"))
            })?;
            let mut cycle = Vec::new();
            for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let v: u32 = tok.parse().map_err(|_| {
                    DessinError::Parse(format!("bad sheet label {tok:?} in {t:?}"))
                })?;
                if v == 0 || v as usize > d {
                    return Err(DessinError::ImageOutOfRange {
                        value: v as u64,
                        degree: d,
                    });
                }
                if moved[v as usize - 1] {
                    return Err(DessinError::Parse(format!(
                        "sheet {v} appears in two cycles"
                    )));
                }
                moved[v as usize - 1] = true;
                cycle.push(v);
            }
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                perm.images[a as usize - 1] = b - 1;
            }
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based sheet.
    pub fn apply(&self, sheet: u32) -> u32 {
        self.images[sheet as usize - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Composition in application order: `self.then(next)` first applies
    /// `self`, then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(self.degree(), next.degree(), "composed permutations must agree on degree");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&v| next.images[v as usize])
                .collect(),
        }
    }

    /// The permutation after relabeling every sheet `x` as `r(x)`.
    pub fn conjugate_by(&self, r: &Permutation) -> Permutation {
        r.inverse().then(self).then(r)
    }

    /// Disjoint cycles with 1-based labels. Each cycle starts at its
    /// smallest sheet and cycles are ordered by that sheet, so the output
    /// is a canonical form.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let d = self.images.len();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            loop {
                seen[i] = true;
                cycle.push(i as u32 + 1);
                i = self.images[i] as usize;
                if i == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Nontrivial cycles in canonical order; the identity prints as `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles() {
            if cycle.len() == 1 {
                continue;
            }
            wrote = true;
            write!(f, "(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "id")?;
        }
        Ok(())
    }
}

/// The branch point a cusp lies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Fiber {
    Zero,
    One,
    Infinity,
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fiber::Zero => write!(f, "0"),
            Fiber::One => write!(f, "1"),
            Fiber::Infinity => write!(f, "inf"),
        }
    }
}

/// A point of the cover above `0`, `1`, or `∞`: one monodromy cycle. The
/// ramification index `e_y` equals the cycle length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cusp {
    pub fiber: Fiber,
    pub cycle: Vec<u32>,
    pub e_y: usize,
}

/// Monodromy of a candidate cover: degree and one permutation per branch
/// point. Validity (identity product, transitivity) is checked by
/// [`BelyiTriple::validate`], not at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BelyiTriple {
    pub d: usize,
    pub s0: Permutation,
    pub s1: Permutation,
    pub s_inf: Permutation,
}

/// Derived data of a validated cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSummary {
    pub d: usize,
    pub g: usize,
    /// Number of cusps, i.e. points over the three branch points.
    pub n: usize,
    /// All cusps, ordered by fiber (`0`, `1`, `∞`) and then by smallest
    /// sheet within the fiber.
    pub cusps: Vec<Cusp>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleJson {
    d: usize,
    s0: Vec<u32>,
    s1: Vec<u32>,
    sinf: Vec<u32>,
}

impl BelyiTriple {
    pub fn new(d: usize, s0: Permutation, s1: Permutation, s_inf: Permutation) -> BelyiTriple {
        BelyiTriple { d, s0, s1, s_inf }
    }

    fn fibers(&self) -> [(Fiber, &Permutation); 3] {
        [
            (Fiber::Zero, &self.s0),
            (Fiber::One, &self.s1),
            (Fiber::Infinity, &self.s_inf),
        ]
    }

    /// Checks the cover axioms and returns the derived summary.
    ///
    /// The product convention is fixed as apply-`s0`-first: the triple is
    /// valid when `s_inf(s1(s0(x))) = x` for every sheet `x`.
    pub fn validate(&self) -> Result<CoverSummary, DessinError> {
        if self.d == 0 {
            return Err(DessinError::EmptyPermutation);
        }
        for (which, p) in [
            ("s0", &self.s0),
            ("s1", &self.s1),
            ("sinf", &self.s_inf),
        ] {
            if p.degree() != self.d {
                return Err(DessinError::SizeMismatch {
                    which,
                    expected: self.d,
                    found: p.degree(),
                });
            }
        }
        for x in 1..=self.d as u32 {
            let y = self.s_inf.apply(self.s1.apply(self.s0.apply(x)));
            if y != x {
                return Err(DessinError::NonIdentityProduct { sheet: x, image: y });
            }
        }
        // Orbit of sheet 1 under <s0, s1>; on a finite set the semigroup
        // orbit equals the group orbit, so inverses are not needed.
        let mut seen = vec![false; self.d];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut orbit = 1usize;
        while let Some(i) = stack.pop() {
            for p in [&self.s0, &self.s1] {
                let j = p.images[i] as usize;
                if !seen[j] {
                    seen[j] = true;
                    orbit += 1;
                    stack.push(j);
                }
            }
        }
        if orbit != self.d {
            return Err(DessinError::NotTransitive {
                orbit,
                degree: self.d,
            });
        }
        let mut cusps = Vec::new();
        for (fiber, p) in self.fibers() {
            for cycle in p.cycles() {
                cusps.push(Cusp {
                    fiber,
                    e_y: cycle.len(),
                    cycle,
                });
            }
        }
        Ok(CoverSummary {
            d: self.d,
            g: self.genus(),
            n: cusps.len(),
            cusps,
        })
    }

    /// Genus by Riemann-Hurwitz: `2g - 2 = -2d + Σ (e_y - 1)` over all
    /// cusps. Callers must pass a valid triple; parity or sign violations
    /// in the formula indicate corrupted input and panic.
    pub fn genus(&self) -> usize {
        for (_, p) in self.fibers() {
            assert_eq!(p.degree(), self.d, "genus of a triple with mismatched degrees");
        }
        let defect: usize = self
            .fibers()
            .iter()
            .flat_map(|(_, p)| p.cycles())
            .map(|c| c.len() - 1)
            .sum();
        assert!(defect % 2 == 0, "ramification defect must be even");
        let twice_genus = (defect + 2) as i64 - 2 * self.d as i64;
        assert!(twice_genus >= 0, "negative genus from Riemann-Hurwitz");
        (twice_genus / 2) as usize
    }

    /// Parses either the text format (`d=3` plus `s0=`, `s1=`, `sinf=`
    /// lines in cycle notation) or the JSON shape
    /// `{"d": .., "s0": [..], "s1": [..], "sinf": [..]}` with 1-based
    /// image arrays.
    pub fn parse(text: &str) -> Result<BelyiTriple, DessinError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    fn parse_json(text: &str) -> Result<BelyiTriple, DessinError> {
        let raw: TripleJson =
            serde_json::from_str(text).map_err(|e| DessinError::Parse(e.to_string()))?;
        if raw.d == 0 {
            return Err(DessinError::Parse("degree must be at least 1".into()));
        }
        let build = |which: &'static str, images: &[u32]| {
            if images.len() != raw.d {
                return Err(DessinError::SizeMismatch {
                    which,
                    expected: raw.d,
                    found: images.len(),
                });
            }
            Permutation::from_images(images)
        };
        Ok(BelyiTriple {
            d: raw.d,
            s0: build("s0", &raw.s0)?,
            s1: build("s1", &raw.s1)?,
            s_inf: build("sinf", &raw.sinf)?,
        })
    }

    fn parse_text(text: &str) -> Result<BelyiTriple, DessinError> {
        let mut d: Option<usize> = None;
        let mut raw: [Option<&str>; 3] = [None, None, None];
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| DessinError::Parse(format!("expected key=value, got {line:?}")))?;
            let slot = match key.trim() {
                "d" => {
                    let v: usize = value.trim().parse().map_err(|_| {
                        DessinError::Parse(format!("bad degree {:?}", value.trim()))
                    })?;
                    if v == 0 {
                        return Err(DessinError::Parse("degree must be at least 1".into()));
                    }
                    if d.replace(v).is_some() {
                        return Err(DessinError::Parse("duplicate key \"d\"".into()));
                    }
                    continue;
                }
                "s0" => 0,
                "s1" => 1,
                "sinf" => 2,
                other => {
                    return Err(DessinError::Parse(format!("unknown key {other:?}")));
                }
            };
            if raw[slot].replace(value).is_some() {
                return Err(DessinError::Parse(format!(
                    "duplicate key \"s{}\"",
                    ["0", "1", "inf"][slot]
                )));
            }
        }
        let d = d.ok_or_else(|| DessinError::Parse("missing key \"d\"".into()))?;
        let mut perms = Vec::with_capacity(3);
        for (slot, name) in ["s0", "s1", "sinf"].iter().enumerate() {
            let value = raw[slot]
                .ok_or_else(|| DessinError::Parse(format!("missing key {name:?}")))?;
            perms.push(Permutation::from_cycles(value, d)?);
        }
        let s_inf = perms.pop().expect("three permutations were parsed");
        let s1 = perms.pop().expect("three permutations were parsed");
        let s0 = perms.pop().expect("three permutations were parsed");
        Ok(BelyiTriple { d, s0, s1, s_inf })
    }
}

/// Sanity gate `g ≤ d`. Every valid triple satisfies it, so `Refuted`
/// flags malformed summary data; the witness records `[g, d]` as points.
pub fn check_genus_le_degree(s: &CoverSummary) -> CertResult {
    if s.g <= s.d {
        CertResult::certified(0)
    } else {
        CertResult::refuted(
            vec![
                Interval::from_u64(s.g as u64),
                Interval::from_u64(s.d as u64),
            ],
            0,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rigor::CertStatus;

    fn cyc(text: &str, d: usize) -> Permutation {
        Permutation::from_cycles(text, d).unwrap()
    }

    fn fiber_indices(s: &CoverSummary, fiber: Fiber) -> Vec<usize> {
        s.cusps
            .iter()
            .filter(|c| c.fiber == fiber)
            .map(|c| c.e_y)
            .collect()
    }

    #[test]
    fn trivial_cover_has_genus_zero_and_three_cusps() {
        let t = BelyiTriple::new(
            1,
            Permutation::identity(1),
            Permutation::identity(1),
            Permutation::identity(1),
        );
        let s = t.validate().unwrap();
        assert_eq!((s.d, s.g, s.n), (1, 0, 3));
        assert!(s.cusps.iter().all(|c| c.e_y == 1));
    }

    #[test]
    fn three_cycle_triple_is_a_torus() {
        let t = BelyiTriple::new(3, cyc("(1 2 3)", 3), cyc("(1 2 3)", 3), cyc("(1 2 3)", 3));
        let s = t.validate().unwrap();
        assert_eq!((s.g, s.n), (1, 3));
        assert_eq!(fiber_indices(&s, Fiber::Zero), vec![3]);
        assert_eq!(fiber_indices(&s, Fiber::Infinity), vec![3]);
    }

    #[test]
    fn double_cover_of_the_line() {
        let t = BelyiTriple::new(2, cyc("(1 2)", 2), cyc("(1 2)", 2), Permutation::identity(2));
        let s = t.validate().unwrap();
        assert_eq!((s.g, s.n), (0, 4));
        assert_eq!(fiber_indices(&s, Fiber::Infinity), vec![1, 1]);
    }

    #[test]
    fn four_cycle_cover_by_hand() {
        // Applying s0 then s1 squares (1 2 3 4) into (1 3)(2 4), which is
        // its own inverse, so s_inf = (1 3)(2 4) closes the product.
        let t = BelyiTriple::new(
            4,
            cyc("(1 2 3 4)", 4),
            cyc("(1 2 3 4)", 4),
            cyc("(1 3)(2 4)", 4),
        );
        let s = t.validate().unwrap();
        assert_eq!(t.genus(), 1);
        assert_eq!((s.g, s.n), (1, 4));
        assert_eq!(fiber_indices(&s, Fiber::Infinity), vec![2, 2]);
    }

    #[test]
    fn validation_reports_the_violated_axiom() {
        let bad_product = BelyiTriple::new(
            3,
            cyc("(1 2 3)", 3),
            cyc("(1 2 3)", 3),
            Permutation::identity(3),
        );
        assert_eq!(
            bad_product.validate(),
            Err(DessinError::NonIdentityProduct { sheet: 1, image: 3 })
        );

        let disconnected = BelyiTriple::new(
            4,
            cyc("(1 2)", 4),
            cyc("(1 2)", 4),
            Permutation::identity(4),
        );
        assert_eq!(
            disconnected.validate(),
            Err(DessinError::NotTransitive { orbit: 2, degree: 4 })
        );

        let short = BelyiTriple::new(
            3,
            cyc("(1 2 3)", 3),
            cyc("(1 2)", 2),
            cyc("(1 2 3)", 3),
        );
        assert_eq!(
            short.validate(),
            Err(DessinError::SizeMismatch {
                which: "s1",
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn image_arrays_are_checked_for_bijectivity() {
        assert_eq!(
            Permutation::from_images(&[1, 1]),
            Err(DessinError::NotBijective { value: 1 })
        );
        assert_eq!(
            Permutation::from_images(&[3, 1]),
            Err(DessinError::ImageOutOfRange { value: 3, degree: 2 })
        );
        assert_eq!(Permutation::from_images(&[]), Err(DessinError::EmptyPermutation));
    }

    #[test]
    fn genus_le_degree_gate() {
        let cert = |d: usize, g: usize| {
            check_genus_le_degree(&CoverSummary {
                d,
                g,
                n: 0,
                cusps: Vec::new(),
            })
            .status
        };
        assert_eq!(cert(3, 1), CertStatus::Certified);
        assert_eq!(cert(3, 4), CertStatus::Refuted);
        assert_eq!(cert(84, 84), CertStatus::Certified);
    }

    #[test]
    fn text_and_json_inputs_agree() {
        let text = "# torus cover\nd=3\ns0=(1 2 3)\ns1=(1 2 3)\nsinf=(1 2 3)\n";
        let json = r#"{"d": 3, "s0": [2, 3, 1], "s1": [2, 3, 1], "sinf": [2, 3, 1]}"#;
        let a = BelyiTriple::parse(text).unwrap();
        let b = BelyiTriple::parse(json).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.validate().unwrap().g, 1);
    }

    #[test]
    fn cycle_notation_accepts_omitted_fixed_points_and_id() {
        let p = cyc("(2 4)", 5);
        assert_eq!(p.apply(1), 1);
        assert_eq!(p.apply(2), 4);
        assert_eq!(p.apply(4), 2);
        assert!(cyc("id", 4).is_identity());
        assert!(cyc("()", 4).is_identity());
        assert_eq!(cyc("(1, 2, 3)", 3), cyc("(1 2 3)", 3));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(
            BelyiTriple::parse("d=3\ns0=(1 2 3)\ns1=(1 2 3)"),
            Err(DessinError::Parse(_))
        ));
        assert!(matches!(
            BelyiTriple::parse("d=3\nsx=(1 2)\ns0=id\ns1=id\nsinf=id"),
            Err(DessinError::Parse(_))
        ));
        assert_eq!(
            Permutation::from_cycles("(1 2)(2 3)", 3),
            Err(DessinError::Parse("sheet 2 appears in two cycles".into()))
        );
        assert!(matches!(
            Permutation::from_cycles("(1 2", 2),
            Err(DessinError::Parse(_))
        ));
        assert!(matches!(
            BelyiTriple::parse(r#"{"d": 2, "s0": [2, 1], "s1": [2, 1]}"#),
            Err(DessinError::Parse(_))
        ));
        assert_eq!(
            BelyiTriple::parse(r#"{"d": 3, "s0": [2, 1], "s1": [1, 2], "sinf": [1, 2]}"#),
            Err(DessinError::SizeMismatch {
                which: "s0",
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn display_roundtrips_through_the_parser() {
        for (text, d) in [("(1 2 3)(4 6)", 6), ("(2 5)", 5), ("id", 3)] {
            let p = cyc(text, d);
            assert_eq!(Permutation::from_cycles(&p.to_string(), d).unwrap(), p);
        }
        assert_eq!(cyc("(3 1 2)", 3).to_string(), "(1 2 3)");
        assert_eq!(Permutation::identity(4).to_string(), "id");
    }

    #[test]
    fn cusps_are_ordered_by_fiber_then_smallest_sheet() {
        let t = BelyiTriple::new(
            4,
            cyc("(1 2 3 4)", 4),
            cyc("(1 2 3 4)", 4),
            cyc("(1 3)(2 4)", 4),
        );
        let s = t.validate().unwrap();
        let keys: Vec<(Fiber, u32)> = s.cusps.iter().map(|c| (c.fiber, c.cycle[0])).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(s.cusps[2].cycle, vec![1, 3]);
        assert_eq!(s.cusps[3].cycle, vec![2, 4]);
    }

    #[test]
    fn composition_applies_left_factor_first() {
        let a = cyc("(1 2)", 3);
        let b = cyc("(2 3)", 3);
        let ab = a.then(&b);
        assert_eq!(ab.apply(1), 3);
        assert_eq!(a.then(&a.inverse()), Permutation::identity(3));
    }
}
