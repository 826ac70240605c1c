//! The corpus as structure files: every corpus algebra, its division
//! bimodule and restricted Nagata product, and every twistable pair.

use nagata_core::corpus;
use nagata_core::nagata::nagata_structure;

use crate::format::Structure;

pub fn corpus_files() -> Vec<(String, Structure)> {
    let mut out = Vec::new();
    for a in corpus::algebras() {
        let s = match a.brouwerian {
            Some(b) => Structure::Brouwerian(b),
            None => Structure::ResiduatedLattice {
                algebra: a.algebra,
                point: a.point,
            },
        };
        out.push((a.name, s));
    }
    for (name, m) in corpus::bimodules() {
        if m.point.is_some() {
            let n = nagata_structure(&m, true).expect("corpus bimodules are pointed residuated");
            out.push((
                format!("restricted-{name}"),
                Structure::Nagata {
                    structure: n,
                    restricted: true,
                },
            ));
        }
        out.push((name, Structure::Bimodule(m)));
    }
    for (name, t) in corpus::twistable_pairs() {
        out.push((name, Structure::TwistablePair(t)));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check;
    use crate::format::{parse, to_text};
    use std::path::PathBuf;

    fn dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
    }

    #[test]
    fn files_match_the_corpus() {
        let bless = std::env::var_os("NAGATA_BLESS").is_some();
        for (name, s) in corpus_files() {
            let path = dir().join(format!("{name}.alg"));
            let text = to_text(&s);
            if bless {
                std::fs::write(&path, &text).unwrap();
            }
            let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(on_disk, text, "{name} is stale; rerun with NAGATA_BLESS=1");
            assert_eq!(parse(&on_disk).unwrap(), s, "{name}");
        }
    }

    #[test]
    fn every_file_passes_its_default_level() {
        for (name, s) in corpus_files() {
            for r in check(&s, None).unwrap() {
                assert!(r.passed, "{name}: {r}");
            }
        }
    }
}
