use std::env;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use crate::CliResult;

pub const OUTPUT_DIR_ENV: &str = "QRM_OUTPUT_DIR";

/// Relative paths land under `$QRM_OUTPUT_DIR` when it is set.
pub fn resolve(path: &str) -> PathBuf {
    let p = PathBuf::from(path);
    match env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p,
    }
}

/// Writes to `path`, or stdout when no path is given.
pub fn emit(path: Option<&str>, contents: &str) -> CliResult {
    match path {
        Some(p) => {
            let target = resolve(p);
            if let Some(parent) = target.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)?;
                }
            }
            fs::write(&target, contents)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absolute_paths_ignore_output_dir() {
        assert_eq!(resolve("/tmp/x.csv"), PathBuf::from("/tmp/x.csv"));
    }
}
