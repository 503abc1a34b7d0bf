use std::fs;
use std::path::PathBuf;

use anyhow::anyhow;
use monodromy_core::braidtrack::{braid_to_matrix, track_roots, BraidError, BraidTrack, LoopSamples};
use serde::Serialize;

use crate::cmd::fmt_c;
use crate::config::{Failure, Format};
use crate::loopfile;
use crate::output;

/// Each refinement halves every step of the loop.
pub const MAX_REFINE_DEPTH: u32 = 8;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Loop file: `t_count=N` then N rows `c3 c2 c1 c0`.
    pub loop_file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Serialize)]
struct BraidReport {
    schema: u32,
    samples: usize,
    refinement_depth: u32,
    permutation: [usize; 3],
    word: String,
    matrix: [[i64; 2]; 2],
    det: i64,
}

fn track_with_refinement(mut samples: LoopSamples) -> Result<(BraidTrack, u32, usize), Failure> {
    for depth in 0..=MAX_REFINE_DEPTH {
        match track_roots(&samples) {
            Ok(t) => return Ok((t, depth, samples.steps())),
            Err(BraidError::RefinementNeeded { .. }) if depth < MAX_REFINE_DEPTH => samples = samples.refined(),
            Err(e @ BraidError::RefinementNeeded { .. }) => {
                return Err(Failure::Check(
                    anyhow!(e).context(format!("still unresolved after {MAX_REFINE_DEPTH} refinements")),
                ))
            }
            Err(e @ BraidError::DegenerateSample { .. }) => return Err(Failure::Check(e.into())),
            Err(e) => return Err(Failure::Usage(e.into())),
        }
    }
    unreachable!("loop returns at the final depth")
}

pub fn run(args: Args) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.loop_file)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.loop_file.display())))?;
    let polys = loopfile::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", args.loop_file.display())))?;
    let samples = LoopSamples::implied(polys).map_err(|e| Failure::Usage(e.into()))?;
    let (track, depth, steps) = track_with_refinement(samples)?;

    let matrix = braid_to_matrix(&track.word);
    let det = matrix.det();
    let out = match args.format {
        Format::Csv => {
            let roots: Vec<String> = track.start_roots.iter().map(|&z| fmt_c(z)).collect();
            format!(
                "start_roots: {}\nsteps: {steps} (refinement depth {depth})\npermutation: {}\nword: {}\nmatrix: {matrix}\ndet: {det}\n",
                roots.join(", "),
                track.permutation,
                track.word,
            )
        }
        Format::Json => output::json(&BraidReport {
            schema: crate::report::SCHEMA_VERSION,
            samples: steps,
            refinement_depth: depth,
            permutation: track.permutation.images(),
            word: track.word.to_string(),
            matrix: matrix.entries(),
            det: det as i64,
        })?,
    };
    output::emit(None, &out)
}
