use clap::{Args, ValueEnum};

use tee_probe::dsl::{cyclic, multi_information, partial_multi_information, render};
use tee_probe::party::default_labels;
use tee_probe::InfoQuantity;

use crate::format::to_json_text;
use crate::sources::{named_quantity, split_list};
use crate::{CliError, Outcome, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Multi-information I_n.
    In,
    /// Multi-information of chosen parties inside n parties.
    Partial,
    /// Cyclic quantity Q_n (n odd).
    Cyclic,
    /// SA, MMI, LW, KP, Q61 or Q62.
    Named,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum, ignore_case = true)]
    pub kind: Kind,
    /// Party count.
    #[arg(long)]
    pub n: Option<usize>,
    /// Quantity name for `named`.
    #[arg(long)]
    pub name: Option<String>,
    /// Chosen parties for `partial`, comma separated.
    #[arg(long)]
    pub parties: Option<String>,
}

pub fn generate(args: &GenerateArgs) -> Result<InfoQuantity, CliError> {
    let need_n = || args.n.ok_or_else(|| CliError::input("--n is required"));
    match args.kind {
        Kind::In => multi_information(need_n()?).map_err(CliError::input),
        Kind::Cyclic => cyclic(need_n()?).map_err(CliError::input),
        Kind::Partial => {
            let universe = default_labels(need_n()?);
            let chosen = split_list(args.parties.as_deref().ok_or_else(|| CliError::input("--parties is required"))?);
            partial_multi_information(&chosen, &universe).map_err(CliError::input)
        }
        Kind::Named => named_quantity(args.name.as_deref().ok_or_else(|| CliError::input("--name is required"))?),
    }
}

pub fn run(args: &GenerateArgs, format: OutputFormat) -> Result<Outcome, CliError> {
    let q = generate(args)?;
    let text = match format {
        OutputFormat::Json => to_json_text(&q.to_json())?,
        OutputFormat::Table => format!("{}\n", render(&q)),
    };
    Ok(Outcome::ok(text))
}
