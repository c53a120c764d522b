//! Regenerates the graph files in `fixtures/` from the built-in constructors.

use std::path::PathBuf;

fn main() -> magspec::error::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (name, graph) in magspec::fixtures::all() {
        let path = dir.join(format!("{name}.mwg"));
        magspec::io::save_periodic(&path, &graph)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
