//! Where hypergraphs come from: files, stdin, inline strings or corpus ids.

use std::fs;
use std::io::{self, BufRead};
use std::path::{Path, PathBuf};

use mmpks::mmp::{FileError, MmpReader, Record};
use mmpks::ParseOptions;

use crate::CliError;

/// Overrides the bundled corpus with a directory of `.mmp` files.
pub const CORPUS_ENV: &str = "MMPKS_CORPUS_DIR";

pub enum Source {
    Stdin,
    File(PathBuf),
    Inline(String),
    Corpus(String),
}

impl Source {
    /// `-` is stdin, an existing path is a file, text containing `,` or
    /// ending in `.` is an MMP line, anything else a corpus id.
    pub fn classify(arg: &str) -> Source {
        if arg == "-" {
            Source::Stdin
        } else if Path::new(arg).is_file() {
            Source::File(arg.into())
        } else if arg.contains(',') || arg.ends_with('.') {
            Source::Inline(arg.to_string())
        } else {
            Source::Corpus(arg.to_string())
        }
    }
}

pub type Records = Box<dyn Iterator<Item = Result<Record, CliError>>>;

fn reader<R: BufRead + 'static>(r: R, opts: &ParseOptions) -> Records {
    Box::new(MmpReader::new(r, opts.clone()).map(|r| r.map_err(CliError::from)))
}

/// Streams the records named by `arg`, one line at a time for files and
/// stdin.
pub fn records(arg: &str, opts: &ParseOptions) -> Result<Records, CliError> {
    match Source::classify(arg) {
        Source::Stdin => Ok(reader(io::BufReader::new(io::stdin()), opts)),
        Source::File(p) => {
            let f = fs::File::open(&p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Ok(reader(io::BufReader::new(f), opts))
        }
        Source::Inline(s) => Ok(reader(io::Cursor::new(s.into_bytes()), opts)),
        Source::Corpus(id) => {
            let rec = corpus_record(&id, opts)?;
            Ok(Box::new(std::iter::once(Ok(rec))))
        }
    }
}

/// Exactly one record from `arg`.
pub fn single(arg: &str, opts: &ParseOptions) -> Result<Record, CliError> {
    let mut it = records(arg, opts)?;
    let first = it.next().ok_or_else(|| CliError::Input(format!("{arg}: no hypergraph")))??;
    if it.next().is_some() {
        return Err(CliError::Input(format!("{arg}: expected a single hypergraph")));
    }
    Ok(first)
}

fn corpus_record(id: &str, opts: &ParseOptions) -> Result<Record, CliError> {
    let (file, name) = match id.split_once(':') {
        Some((f, n)) => (Some(f), n),
        None => (None, id),
    };
    let mut found = Vec::new();
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) => {
            let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
                .map_err(|e| CliError::Io(format!("{}: {e}", Path::new(&dir).display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "mmp"))
                .collect();
            paths.sort();
            for p in paths {
                if file.is_some_and(|f| p.file_stem().is_none_or(|s| s != f)) {
                    continue;
                }
                let text = fs::read_to_string(&p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                for rec in MmpReader::new(text.as_bytes(), opts.clone()) {
                    let rec = rec?;
                    if rec.name.as_deref() == Some(name) {
                        found.push(rec);
                    }
                }
            }
        }
        None => {
            for (f, text) in mmpks::corpus::FILES {
                if file.is_some_and(|x| x != *f) {
                    continue;
                }
                for rec in MmpReader::new(text.as_bytes(), opts.clone()) {
                    let rec = rec.map_err(|e: FileError| CliError::Input(e.to_string()))?;
                    if rec.name.as_deref() == Some(name) {
                        found.push(rec);
                    }
                }
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one")),
        0 => Err(CliError::Input(format!("{id}: not a file, MMP string or corpus id"))),
        _ => Err(CliError::Input(format!("{id}: ambiguous corpus id; use file:id"))),
    }
}
