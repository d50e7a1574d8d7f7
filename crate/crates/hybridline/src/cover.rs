//! 4-covers of the line and the hybrid topologies they determine.
//!
//! A cover partitions the line into four regions selecting a neighborhood
//! style per point: two-sided intervals, singletons, right half-open
//! intervals (the Sorgenfrey style), or left half-open intervals. The
//! partition is described by labeled breakpoint pieces refined by point and
//! generator overrides, with precedence
//!
//! ```text
//! point overrides  >  generator overrides  >  breakpoint singletons  >  pieces
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactsets::{Discrete, Endpoint, ExactError, Ext, Interval, RSet, Rat, SeqGen};
use crate::max_level;

/// Neighborhood style of a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// 1 — two-sided `(x−ε, x+ε)`.
    TwoSided,
    /// 2 — isolated `{x}`.
    Isolated,
    /// 3 — right half-open `[x, x+ε)`.
    Right,
    /// 4 — left half-open `(x−ε, x]`.
    Left,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::TwoSided, Label::Isolated, Label::Right, Label::Left];

    pub fn from_u8(v: u8) -> Option<Label> {
        match v {
            1 => Some(Label::TwoSided),
            2 => Some(Label::Isolated),
            3 => Some(Label::Right),
            4 => Some(Label::Left),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Label::TwoSided => 1,
            Label::Isolated => 2,
            Label::Right => 3,
            Label::Left => 4,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Errors from cover construction and queries.
#[derive(Debug, Error)]
pub enum CoverError {
    /// The raw description breaks one or more structural rules; every
    /// violation found is listed.
    #[error("invalid cover:\n  {}", .0.join("\n  "))]
    Violations(Vec<String>),
    /// A sampled-openness query received a sample outside the set.
    #[error("sample {0} is not a member of the queried set")]
    SampleOutside(Rat),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Raw, unvalidated cover description.
#[derive(Clone, Debug, Default)]
pub struct CoverSpec {
    /// Strictly increasing.
    pub breakpoints: Vec<Rat>,
    /// `2m+1` labels for `m` breakpoints, alternating piece, breakpoint,
    /// piece, …, piece.
    pub piece_labels: Vec<Label>,
    pub point_overrides: Vec<(Rat, Label)>,
    pub gen_overrides: Vec<(SeqGen, Label)>,
}

impl CoverSpec {
    /// Validates every structural rule, collecting all violations rather
    /// than stopping at the first.
    pub fn validate(self) -> Result<FourCover, CoverError> {
        let mut bad: Vec<String> = Vec::new();
        for w in self.breakpoints.windows(2) {
            if w[0] >= w[1] {
                bad.push(format!(
                    "breakpoints must be strictly increasing, got {} before {}",
                    w[0], w[1]
                ));
            }
        }
        if self.piece_labels.len() != 2 * self.breakpoints.len() + 1 {
            bad.push(format!(
                "expected {} piece labels for {} breakpoints, got {}",
                2 * self.breakpoints.len() + 1,
                self.breakpoints.len(),
                self.piece_labels.len()
            ));
        }
        let mut point_overrides: BTreeMap<Rat, Label> = BTreeMap::new();
        for (p, l) in &self.point_overrides {
            if point_overrides.insert(p.clone(), *l).is_some() {
                bad.push(format!("point {p} is overridden more than once"));
            }
        }
        for (g, _) in &self.gen_overrides {
            for p in &self.breakpoints {
                if g.member_index(p).is_some() {
                    bad.push(format!("generator {g} hits breakpoint {p}"));
                }
            }
            for p in point_overrides.keys() {
                if g.member_index(p).is_some() {
                    bad.push(format!("generator {g} hits overridden point {p}"));
                }
            }
        }
        for (i, (g, _)) in self.gen_overrides.iter().enumerate() {
            for (h, _) in &self.gen_overrides[i + 1..] {
                let dg = Discrete::new(Vec::<Rat>::new(), vec![g.clone()])?;
                let dh = Discrete::new(Vec::<Rat>::new(), vec![h.clone()])?;
                if !dg.intersect(&dh)?.is_empty() {
                    bad.push(format!("generators {g} and {h} overlap"));
                }
            }
        }
        if !bad.is_empty() {
            return Err(CoverError::Violations(bad));
        }
        Ok(FourCover {
            breakpoints: self.breakpoints,
            piece_labels: self.piece_labels,
            point_overrides,
            gen_overrides: self.gen_overrides,
        })
    }
}

/// A validated 4-cover. Immutable; all queries are pure.
#[derive(Clone, Debug)]
pub struct FourCover {
    breakpoints: Vec<Rat>,
    piece_labels: Vec<Label>,
    point_overrides: BTreeMap<Rat, Label>,
    gen_overrides: Vec<(SeqGen, Label)>,
}

/// One member of the local base at a point.
#[derive(Clone, Debug)]
pub struct LocalBaseNbhd {
    pub center: Rat,
    pub label: Label,
    pub radius: Rat,
    pub set: RSet,
}

/// Outcome of a sampled openness check: bounded search either certifies
/// every sample or names the first sample it could not certify (which is not
/// a proof of non-openness).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Openness {
    Verified,
    NotVerified { sample: Rat },
}

impl FourCover {
    /// Uniform cover: every point gets the same label.
    pub fn uniform(label: Label) -> FourCover {
        CoverSpec {
            piece_labels: vec![label],
            ..CoverSpec::default()
        }
        .validate()
        .expect("uniform cover is structurally valid")
    }

    /// The euclidean line: every point two-sided.
    pub fn real_line() -> FourCover {
        FourCover::uniform(Label::TwoSided)
    }

    /// The Sorgenfrey line: every point right half-open.
    pub fn sorgenfrey() -> FourCover {
        FourCover::uniform(Label::Right)
    }

    /// The mirrored Sorgenfrey line: every point left half-open.
    pub fn sorgenfrey_left() -> FourCover {
        FourCover::uniform(Label::Left)
    }

    /// A finite stand-in for the Hattori space over the rationals: two-sided
    /// neighborhoods at the integer breakpoints −2..2, Sorgenfrey style
    /// elsewhere. The true construction puts two-sided neighborhoods on a
    /// dense countable set, which is not a representable region; this preset
    /// keeps its flavor at finitely many points.
    pub fn hattori_approx() -> FourCover {
        let breakpoints: Vec<Rat> = (-2..=2).map(Rat::int).collect();
        let mut piece_labels = vec![Label::Right];
        for _ in 0..breakpoints.len() {
            piece_labels.push(Label::TwoSided);
            piece_labels.push(Label::Right);
        }
        CoverSpec {
            breakpoints,
            piece_labels,
            ..CoverSpec::default()
        }
        .validate()
        .expect("preset is structurally valid")
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn piece_labels(&self) -> &[Label] {
        &self.piece_labels
    }

    pub fn point_overrides(&self) -> &BTreeMap<Rat, Label> {
        &self.point_overrides
    }

    pub fn gen_overrides(&self) -> &[(SeqGen, Label)] {
        &self.gen_overrides
    }

    /// The unique effective label of `x` under the precedence rule.
    pub fn label_of(&self, x: &Rat) -> Label {
        if let Some(l) = self.point_overrides.get(x) {
            return *l;
        }
        for (g, l) in &self.gen_overrides {
            if g.member_index(x).is_some() {
                return *l;
            }
        }
        match self.breakpoints.binary_search(x) {
            Ok(i) => self.piece_labels[2 * i + 1],
            Err(i) => self.piece_labels[2 * i],
        }
    }

    /// Materializes the region carrying `label` as an exact set:
    /// base pieces and breakpoint singletons, minus every overridden point,
    /// plus the overrides that carry the label themselves.
    pub fn region(&self, label: Label) -> Result<RSet, ExactError> {
        let m = self.breakpoints.len();
        let mut ivs: Vec<Interval> = Vec::new();
        for i in 0..=m {
            if self.piece_labels[2 * i] != label {
                continue;
            }
            let lo = if i == 0 {
                Endpoint::open(Ext::NegInf)
            } else {
                Endpoint::open(Ext::Fin(self.breakpoints[i - 1].clone()))
            };
            let hi = if i == m {
                Endpoint::open(Ext::PosInf)
            } else {
                Endpoint::open(Ext::Fin(self.breakpoints[i].clone()))
            };
            ivs.push(Interval::new(lo, hi).expect("pieces are nondegenerate"));
        }
        let bp_pts: Vec<Rat> = (0..m)
            .filter(|&i| self.piece_labels[2 * i + 1] == label)
            .map(|i| self.breakpoints[i].clone())
            .collect();
        let base = RSet::from_parts(ivs, Discrete::from_points(bp_pts), Discrete::empty())?;

        let all_pts: Vec<Rat> = self.point_overrides.keys().cloned().collect();
        let all_gens: Vec<SeqGen> = self.gen_overrides.iter().map(|(g, _)| g.clone()).collect();
        let everything_overridden =
            RSet::from_parts(vec![], Discrete::new(all_pts, all_gens)?, Discrete::empty())?;

        let my_pts: Vec<Rat> = self
            .point_overrides
            .iter()
            .filter(|(_, l)| **l == label)
            .map(|(p, _)| p.clone())
            .collect();
        let my_gens: Vec<SeqGen> = self
            .gen_overrides
            .iter()
            .filter(|(_, l)| *l == label)
            .map(|(g, _)| g.clone())
            .collect();
        let mine = RSet::from_parts(vec![], Discrete::new(my_pts, my_gens)?, Discrete::empty())?;

        base.diff(&everything_overridden)?.union(&mine)
    }

    /// The local-base member of radius `eps` at `x` (radius is ignored for
    /// isolated points).
    pub fn local_base_nbhd(&self, x: &Rat, eps: &Rat) -> LocalBaseNbhd {
        assert!(eps.is_positive(), "radius must be positive");
        let label = self.label_of(x);
        let set = basic_nbhd(label, x, eps);
        LocalBaseNbhd {
            center: x.clone(),
            label,
            radius: eps.clone(),
            set,
        }
    }

    /// Certifies openness of `s` at each sample by searching dyadic radii
    /// `2⁻ᵏ` for a basic neighborhood contained in `s`.
    pub fn is_open_sampled(&self, s: &RSet, samples: &[Rat]) -> Result<Openness, CoverError> {
        for x in samples {
            if !s.member(x) {
                return Err(CoverError::SampleOutside(x.clone()));
            }
            let mut ok = false;
            for k in 0..=max_level() {
                let nb = self.local_base_nbhd(x, &Rat::dyadic(k));
                if nb.set.subset_of(s)? {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Ok(Openness::NotVerified { sample: x.clone() });
            }
        }
        Ok(Openness::Verified)
    }
}

/// The basic neighborhood shape for a label.
pub fn basic_nbhd(label: Label, x: &Rat, eps: &Rat) -> RSet {
    match label {
        Label::TwoSided => RSet::from_interval(
            Interval::bounded(x - eps, false, x + eps, false).expect("eps is positive"),
        ),
        Label::Isolated => RSet::point(x.clone()),
        Label::Right => RSet::from_interval(
            Interval::bounded(x.clone(), true, x + eps, false).expect("eps is positive"),
        ),
        Label::Left => RSet::from_interval(
            Interval::bounded(x - eps, false, x.clone(), true).expect("eps is positive"),
        ),
    }
}

/// Serialized cover document. Field order is the canonical JSON order; the
/// document round-trips bit-exactly through [`CoverSpec`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoverFile {
    #[serde(default)]
    pub breakpoints: Vec<Rat>,
    pub piece_labels: Vec<u8>,
    #[serde(default)]
    pub point_overrides: Vec<(Rat, u8)>,
    #[serde(default)]
    pub gen_overrides: Vec<(GenEntry, u8)>,
}

/// Serialized generator: `{a + c·r^k : k ≥ k0}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GenEntry {
    pub a: Rat,
    pub c: Rat,
    pub r: Rat,
    pub k0: u64,
}

impl CoverFile {
    pub fn into_spec(self) -> Result<CoverSpec, CoverError> {
        let mut bad = Vec::new();
        let label = |v: u8, what: &str, bad: &mut Vec<String>| {
            Label::from_u8(v).unwrap_or_else(|| {
                bad.push(format!("{what}: label must be 1..4, got {v}"));
                Label::TwoSided
            })
        };
        let piece_labels = self
            .piece_labels
            .iter()
            .map(|&v| label(v, "piece_labels", &mut bad))
            .collect();
        let point_overrides = self
            .point_overrides
            .into_iter()
            .map(|(p, v)| {
                let l = label(v, "point_overrides", &mut bad);
                (p, l)
            })
            .collect();
        let mut gen_overrides = Vec::new();
        for (e, v) in self.gen_overrides {
            let l = label(v, "gen_overrides", &mut bad);
            match SeqGen::new(e.a, e.c, e.r, e.k0) {
                Ok(g) => gen_overrides.push((g, l)),
                Err(err) => bad.push(format!("gen_overrides: {err}")),
            }
        }
        if !bad.is_empty() {
            return Err(CoverError::Violations(bad));
        }
        Ok(CoverSpec {
            breakpoints: self.breakpoints,
            piece_labels,
            point_overrides,
            gen_overrides,
        })
    }

    pub fn from_cover(c: &FourCover) -> CoverFile {
        CoverFile {
            breakpoints: c.breakpoints.clone(),
            piece_labels: c.piece_labels.iter().map(|l| l.as_u8()).collect(),
            point_overrides: c
                .point_overrides
                .iter()
                .map(|(p, l)| (p.clone(), l.as_u8()))
                .collect(),
            gen_overrides: c
                .gen_overrides
                .iter()
                .map(|(g, l)| {
                    (
                        GenEntry {
                            a: g.limit().clone(),
                            c: g.coeff().clone(),
                            r: g.ratio().clone(),
                            k0: g.start(),
                        },
                        l.as_u8(),
                    )
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn gen(a: i64, c: (i64, i64), r: (i64, i64), k0: u64) -> SeqGen {
        SeqGen::new(Rat::int(a), q(c.0, c.1), q(r.0, r.1), k0).unwrap()
    }

    #[test]
    fn label_precedence() {
        let c = CoverSpec {
            breakpoints: vec![Rat::zero()],
            piece_labels: vec![Label::TwoSided, Label::Isolated, Label::Right],
            point_overrides: vec![(q(1, 1), Label::Left)],
            gen_overrides: vec![(gen(0, (1, 1), (1, 2), 1), Label::Right)],
        }
        .validate()
        .unwrap();
        assert_eq!(c.label_of(&q(-1, 1)), Label::TwoSided);
        assert_eq!(c.label_of(&Rat::zero()), Label::Isolated);
        assert_eq!(c.label_of(&q(3, 1)), Label::Right);
        assert_eq!(c.label_of(&q(1, 1)), Label::Left); // point beats piece
        assert_eq!(c.label_of(&q(1, 4)), Label::Right); // generator point
        assert_eq!(c.label_of(&q(1, 5)), Label::Right); // plain piece point
    }

    #[test]
    fn validation_collects_violations() {
        let err = CoverSpec {
            breakpoints: vec![Rat::one(), Rat::zero()],
            piece_labels: vec![Label::TwoSided],
            point_overrides: vec![(Rat::zero(), Label::Isolated), (Rat::zero(), Label::Right)],
            gen_overrides: vec![
                (gen(0, (1, 1), (1, 2), 0), Label::Right),
                (gen(0, (1, 1), (1, 4), 0), Label::Left),
            ],
        }
        .validate()
        .unwrap_err();
        match err {
            CoverError::Violations(v) => {
                assert!(v.iter().any(|m| m.contains("strictly increasing")));
                assert!(v.iter().any(|m| m.contains("piece labels")));
                assert!(v.iter().any(|m| m.contains("more than once")));
                assert!(v.iter().any(|m| m.contains("overlap")));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn generator_hitting_breakpoint_is_rejected() {
        let err = CoverSpec {
            breakpoints: vec![q(1, 2)],
            piece_labels: vec![Label::TwoSided, Label::Isolated, Label::TwoSided],
            gen_overrides: vec![(gen(0, (1, 1), (1, 2), 1), Label::Right)],
            ..CoverSpec::default()
        }
        .validate()
        .unwrap_err();
        match err {
            CoverError::Violations(v) => {
                assert!(v.iter().any(|m| m.contains("hits breakpoint")));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn uniform_regions() {
        let s = FourCover::sorgenfrey();
        assert_eq!(s.region(Label::Right).unwrap(), RSet::all());
        assert!(s.region(Label::TwoSided).unwrap().is_empty());
        assert!(s.region(Label::Isolated).unwrap().is_empty());
        assert!(s.region(Label::Left).unwrap().is_empty());
    }

    #[test]
    fn override_regions() {
        let c = CoverSpec {
            piece_labels: vec![Label::TwoSided],
            point_overrides: vec![(Rat::zero(), Label::Isolated)],
            ..CoverSpec::default()
        }
        .validate()
        .unwrap();
        let r1 = c.region(Label::TwoSided).unwrap();
        assert!(!r1.member(&Rat::zero()));
        assert!(r1.member(&q(1, 3)));
        assert_eq!(c.region(Label::Isolated).unwrap(), RSet::point(Rat::zero()));
    }

    #[test]
    fn regions_partition_the_line() {
        let c = CoverSpec {
            breakpoints: vec![Rat::zero(), Rat::one()],
            piece_labels: vec![
                Label::TwoSided,
                Label::Isolated,
                Label::Right,
                Label::Left,
                Label::Right,
            ],
            point_overrides: vec![(q(1, 3), Label::Left), (q(5, 1), Label::Isolated)],
            gen_overrides: vec![(gen(2, (1, 1), (1, 2), 1), Label::TwoSided)],
        }
        .validate()
        .unwrap();
        let regions: Vec<RSet> = Label::ALL.iter().map(|&l| c.region(l).unwrap()).collect();
        let mut union = RSet::empty();
        for r in &regions {
            union = union.union(r).unwrap();
        }
        assert_eq!(union, RSet::all());
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(
                    regions[i].intersect(&regions[j]).unwrap().is_empty(),
                    "regions {} and {} overlap",
                    i + 1,
                    j + 1
                );
            }
        }
        // membership matches label_of pointwise on assorted probes
        for x in [
            q(-7, 2),
            Rat::zero(),
            q(1, 3),
            q(1, 2),
            Rat::one(),
            q(9, 4),
            q(5, 2),
            q(5, 1),
        ] {
            let l = c.label_of(&x);
            for &m in &Label::ALL {
                assert_eq!(regions[(m.as_u8() - 1) as usize].member(&x), m == l);
            }
        }
    }

    #[test]
    fn local_base_shapes() {
        let s = FourCover::sorgenfrey();
        let nb = s.local_base_nbhd(&Rat::zero(), &Rat::one());
        assert_eq!(nb.set.to_string(), "[0,1)");

        let left = FourCover::sorgenfrey_left();
        let nb = left.local_base_nbhd(&Rat::zero(), &q(1, 2));
        assert_eq!(nb.set.to_string(), "(-1/2,0]");

        let c = CoverSpec {
            piece_labels: vec![Label::TwoSided],
            point_overrides: vec![(Rat::zero(), Label::Isolated)],
            ..CoverSpec::default()
        }
        .validate()
        .unwrap();
        let nb = c.local_base_nbhd(&Rat::zero(), &q(7, 1));
        assert_eq!(nb.set, RSet::point(Rat::zero()));
        let nb = c.local_base_nbhd(&Rat::one(), &q(1, 4));
        assert_eq!(nb.set.to_string(), "(3/4,5/4)");
    }

    #[test]
    fn nested_radii_nest() {
        let c = FourCover::hattori_approx();
        for x in [Rat::zero(), q(1, 2), q(-2, 1)] {
            let big = c.local_base_nbhd(&x, &q(1, 2)).set;
            let small = c.local_base_nbhd(&x, &q(1, 8)).set;
            assert!(small.subset_of(&big).unwrap());
            assert!(big.member(&x) && small.member(&x));
        }
    }

    #[test]
    fn sampled_openness() {
        let s = FourCover::sorgenfrey();
        let set =
            RSet::from_interval(Interval::bounded(Rat::zero(), true, Rat::one(), false).unwrap());
        let verdict = s.is_open_sampled(&set, &[Rat::zero(), q(1, 2)]).unwrap();
        assert_eq!(verdict, Openness::Verified);

        let not_open =
            RSet::from_interval(Interval::bounded(Rat::zero(), false, Rat::one(), true).unwrap());
        let verdict = s.is_open_sampled(&not_open, &[Rat::one()]).unwrap();
        assert_eq!(verdict, Openness::NotVerified { sample: Rat::one() });

        let verdict = s.is_open_sampled(&RSet::all(), &[q(3, 7)]).unwrap();
        assert_eq!(verdict, Openness::Verified);

        let err = s.is_open_sampled(&set, &[q(2, 1)]).unwrap_err();
        assert!(matches!(err, CoverError::SampleOutside(_)));
    }

    #[test]
    fn cover_file_round_trip() {
        let c = CoverSpec {
            breakpoints: vec![Rat::zero()],
            piece_labels: vec![Label::Right, Label::Isolated, Label::TwoSided],
            point_overrides: vec![(q(1, 2), Label::Left)],
            gen_overrides: vec![(gen(1, (-1, 1), (1, 3), 2), Label::Right)],
        }
        .validate()
        .unwrap();
        let file = CoverFile::from_cover(&c);
        let json = serde_json::to_string(&file).unwrap();
        let back: CoverFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, file);
        let revalidated = back.into_spec().unwrap().validate().unwrap();
        assert_eq!(
            serde_json::to_string(&CoverFile::from_cover(&revalidated)).unwrap(),
            json
        );
        // the generator start index is preserved verbatim
        assert_eq!(file.gen_overrides[0].0.k0, 2);
    }

    #[test]
    fn bad_labels_in_file_are_reported() {
        let json = r#"{"breakpoints":[],"piece_labels":[7]}"#;
        let file: CoverFile = serde_json::from_str(json).unwrap();
        assert!(matches!(file.into_spec(), Err(CoverError::Violations(_))));
    }
}
