//! Dump the solution catalog as JSON (stdout or a file given as argument).

use kk7::verify::{catalog, catalog_json};

fn main() -> std::io::Result<()> {
    let entries = catalog();
    let json = catalog_json(&entries);
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, json)?;
            eprintln!("wrote {} entries to {path}", entries.len());
        }
        None => println!("{json}"),
    }
    Ok(())
}
