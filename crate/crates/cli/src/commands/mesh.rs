use std::path::PathBuf;

use clap::Args;
use steklov_core::geometry::save_mesh;

use super::{Outcome, EXIT_OK};
use crate::domain::DomainArgs;
use crate::output::emit;

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Uniform refinements applied after generation.
    #[arg(long, default_value_t = 0)]
    pub refine: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &MeshArgs) -> Outcome {
    let (_, mesh) = args.domain.mesh(args.refine)?;
    emit(args.out.as_deref(), &save_mesh(&mesh))?;
    Ok(EXIT_OK)
}
