//! Write the embedded graph of the tacnode series at k = 3 as DOT and JSON.

use singraph::fixtures;
use singraph::pipeline::{resolve, ResolveOptions};
use singraph::resgraph::{export, ExportFormat};

fn main() -> singraph::Result<()> {
    let res = resolve(&fixtures::tacnode(), 3, ResolveOptions::default())?;
    println!("{}", export(&res.embedded, ExportFormat::Dot));
    println!("{}", export(&res.minimal, ExportFormat::Json));
    Ok(())
}
