pub mod curvature;
pub mod embed;
pub mod geodesic;
pub mod penrose;
pub mod redshift;
pub mod verify;

use std::path::PathBuf;

use clap::Args;

use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::output::Format;

#[derive(Args, Clone, Debug, Default)]
pub struct OutArgs {
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (standard output when omitted)
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

impl OutArgs {
    /// Resolved format; `allowed` lists what the command can emit.
    pub fn format(&self, cfg: &Config, default: Format, allowed: &[Format]) -> CliResult<Format> {
        let f = match self.format {
            Some(f) => f,
            None => match cfg.string("format")? {
                Some(s) => s.parse()?,
                None => default,
            },
        };
        if !allowed.contains(&f) {
            return Err(CliError::usage(format!("format {f:?} is not available for this command")));
        }
        Ok(f)
    }

    pub fn path(&self, cfg: &Config) -> CliResult<Option<PathBuf>> {
        match &self.out {
            Some(p) => Ok(Some(p.clone())),
            None => Ok(cfg.string("out")?.map(PathBuf::from)),
        }
    }
}
