//! Deterministic cover generation. The generator is SplitMix64 with a fixed
//! draw order, so a seed reproduces the same cover in any port of this
//! tool; every generated cover passes validation by construction (invalid
//! draws are discarded and redrawn deterministically).

use std::collections::BTreeSet;

use hybridline::cover::{CoverSpec, FourCover, Label};
use hybridline::exactsets::{Rat, SeqGen};
use hybridline::qmetric::SplitMix64;

/// Bounds for one fuzzed cover. All fields cap the respective feature
/// count; the draw itself picks the actual count uniformly up to the cap.
#[derive(Clone, Debug)]
pub struct FuzzSpec {
    pub max_breakpoints: u64,
    pub max_point_overrides: u64,
    pub max_gen_overrides: u64,
    pub seed: u64,
}

impl Default for FuzzSpec {
    fn default() -> FuzzSpec {
        FuzzSpec {
            max_breakpoints: 3,
            max_point_overrides: 2,
            max_gen_overrides: 1,
            seed: 0,
        }
    }
}

fn draw_label(rng: &mut SplitMix64) -> Label {
    Label::from_u8(1 + rng.below(4) as u8).expect("1..=4 is a valid label range")
}

fn attempt(rng: &mut SplitMix64, spec: &FuzzSpec, gens: bool) -> Result<FourCover, ()> {
    let nb = rng.below(spec.max_breakpoints + 1);
    let mut bps: BTreeSet<Rat> = BTreeSet::new();
    for _ in 0..nb {
        bps.insert(rng.rat());
    }
    let breakpoints: Vec<Rat> = bps.into_iter().collect();
    let piece_labels: Vec<Label> = (0..2 * breakpoints.len() + 1)
        .map(|_| draw_label(rng))
        .collect();

    let np = rng.below(spec.max_point_overrides + 1);
    let mut point_overrides: Vec<(Rat, Label)> = Vec::new();
    for _ in 0..np {
        let x = rng.rat();
        if breakpoints.contains(&x) || point_overrides.iter().any(|(p, _)| *p == x) {
            continue; // keep overrides strictly inside pieces
        }
        point_overrides.push((x, draw_label(rng)));
    }

    let ng = if gens {
        rng.below(spec.max_gen_overrides + 1)
    } else {
        0
    };
    let mut gen_overrides: Vec<(SeqGen, Label)> = Vec::new();
    for _ in 0..ng {
        // limit at a breakpoint when one exists, otherwise an interior point
        let a = if !breakpoints.is_empty() && rng.below(2) == 0 {
            rng.pick(&breakpoints).clone()
        } else {
            rng.rat()
        };
        let c = if rng.below(2) == 0 {
            Rat::one()
        } else {
            Rat::int(-1)
        };
        let ratios = [Rat::new(1, 2), Rat::new(1, 3), Rat::new(2, 3)];
        let r = rng.pick(&ratios).clone();
        let k0 = rng.below(3);
        let Ok(g) = SeqGen::new(a, c, r, k0) else {
            continue;
        };
        gen_overrides.push((g, draw_label(rng)));
    }

    CoverSpec {
        breakpoints,
        piece_labels,
        point_overrides,
        gen_overrides,
    }
    .validate()
    .map_err(|_| ())
}

/// Draws one cover. Rejected draws (generator collisions and the like)
/// advance the generator state and retry, so the result is still a pure
/// function of the spec; after many rejections the generator features are
/// dropped, which always terminates with a valid piece-labeled cover.
pub fn fuzz_cover(spec: &FuzzSpec) -> FourCover {
    let mut rng = SplitMix64::new(spec.seed);
    for _ in 0..100 {
        if let Ok(c) = attempt(&mut rng, spec, true) {
            return c;
        }
    }
    loop {
        if let Ok(c) = attempt(&mut rng, spec, false) {
            return c;
        }
    }
}
