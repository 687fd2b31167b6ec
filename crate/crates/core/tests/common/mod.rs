#![allow(dead_code)]

pub mod corpus;
pub mod oracle;

use folio::faces::Color;
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

/// Random base palettes that clear the 4.5 contrast floor.
pub fn random_palettes(n: usize, seed: u64) -> Vec<(Color, Color)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let fg = Color::rgb(rng.gen(), rng.gen(), rng.gen());
        let bg = Color::rgb(rng.gen(), rng.gen(), rng.gen());
        if oracle::contrast(fg, bg) >= 4.5 {
            out.push((fg, bg));
        }
    }
    out
}
