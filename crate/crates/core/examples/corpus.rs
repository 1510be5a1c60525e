//! Generate a labelled corpus into a directory, as `eqdac gen` does.

use eqdac::repo::{generate_corpus, write_corpus};

pub fn run_example() -> usize {
    let entries = generate_corpus(1, 5, 2);
    let dir = std::env::temp_dir().join(format!("eqdac-corpus-{}", std::process::id()));
    write_corpus(&dir, &entries).unwrap();
    let files = std::fs::read_dir(&dir).unwrap().count();
    println!("{} constraints in {}", entries.len(), dir.display());
    println!("{}", entries[0].source);
    std::fs::remove_dir_all(&dir).unwrap();
    files
}

#[allow(dead_code)]
fn main() {
    run_example();
}
