//! Reading the bivariate polynomial corpus from disk.

use std::path::Path;

use legtors_core::resultants::{parse_corpus, CorpusEntry};

use crate::error::{CliError, CliResult};

/// The corpus shipped with the repository.
pub const BUNDLED_TABLE1: &str = include_str!("../../../corpus/table1.txt");

pub fn read_corpus(path: &Path) -> CliResult<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_corpus(&text).map_err(|source| CliError::Corpus { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses() {
        let entries = parse_corpus(BUNDLED_TABLE1).unwrap();
        assert_eq!(entries.len(), 35);
    }

    #[test]
    fn errors_carry_the_line() {
        let dir = std::env::temp_dir().join(format!("legtors-corpus-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.txt");
        std::fs::write(&path, "[1,1]\na + b\n\na + * b\n").unwrap();
        let err = read_corpus(&path).unwrap_err();
        assert!(matches!(err, CliError::Corpus { source: legtors_core::Error::Parse { line: 4, .. }, .. }), "{err}");
        assert!(matches!(read_corpus(&dir.join("missing.txt")), Err(CliError::Io { .. })));
        std::fs::remove_dir_all(&dir).ok();
    }
}
