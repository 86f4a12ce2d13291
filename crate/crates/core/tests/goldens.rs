use std::fs;
use std::path::PathBuf;

use nabla_kit::identities::nabla_matrix;
use nabla_kit::macdonald::{cache_load, cache_store, compute_basis};
use nabla_kit::partitions::part;

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn nabla_matrices_match_the_published_displays() {
    for n in [2, 3] {
        assert_eq!(nabla_matrix(n).unwrap().to_text(), golden(&format!("nabla{n}.txt")), "n={n}");
    }
}

#[test]
fn degree_three_cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = cache_store(dir.path(), &compute_basis(3).unwrap()).unwrap();
    assert_eq!(fs::read_to_string(path).unwrap(), golden("macdonald_n3.txt"));

    fs::write(dir.path().join("macdonald_n3.txt"), golden("macdonald_n3.txt")).unwrap();
    let b = cache_load(dir.path(), 3).expect("golden file loads");
    assert_eq!(b.kostka(&part(&[2, 1]), &part(&[2, 1])).unwrap().to_text("x"), "q + t");
}
