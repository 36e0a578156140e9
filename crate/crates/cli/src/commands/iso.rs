//! `nucifera iso`: isomorphism test with an optional verified witness.

use std::io::Write;

use nucifera_core::{is_isomorphic, BitGraph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::load_graph;
use crate::{emit, CliError, Format, IsoArgs, EXIT_NEGATIVE, EXIT_OK};

pub fn run(args: &IsoArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let json = match args.format {
        None => false,
        Some(Format::Json) => true,
        Some(_) => return Err(CliError::Usage("iso supports --format json".into())),
    };
    let g = load_graph(&args.first)?;
    let mut h = load_graph(&args.second)?;
    if let Some(seed) = args.seed {
        h = shuffled(&h, seed);
    }
    let map = is_isomorphic(&g, &h)?;
    if let Some(m) = &map {
        // Checked again here so that nothing unverified is ever printed.
        if g.relabeled(m) != h {
            return Err(CliError::Internal(
                "isomorphism witness failed verification".into(),
            ));
        }
    }
    let text = if json {
        let mut v = serde_json::json!({ "isomorphic": map.is_some() });
        if args.witness {
            v["witness"] = serde_json::json!(map);
        }
        serde_json::to_string(&v).expect("json") + "\n"
    } else {
        let mut s = String::from(if map.is_some() {
            "isomorphic\n"
        } else {
            "not isomorphic\n"
        });
        if let (true, Some(m)) = (args.witness, &map) {
            let pairs: Vec<String> = m
                .iter()
                .enumerate()
                .map(|(v, w)| format!("{v}:{w}"))
                .collect();
            s.push_str(&format!("witness: {}\n", pairs.join(" ")));
        }
        s
    };
    emit(out, &text)?;
    Ok(if map.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

/// Relabels `g` by a permutation drawn from `seed`.
pub fn shuffled(g: &BitGraph, seed: u64) -> BitGraph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    g.relabeled(&perm)
}
