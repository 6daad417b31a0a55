#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use dsketch::commands::load;
use dsketch::Model;
use dsketch_core::graph::enumerate_morphisms;
use dsketch_core::{Sketch, SketchMorphism};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Every `*.sketch` file of the category-theory corpus, sorted.
pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures().join("ct"))
        .expect("corpus directory exists")
        .map(|e| e.expect("readable entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "sketch"))
        .collect();
    files.sort();
    files
}

pub fn corpus() -> Model {
    load(&corpus_files()).expect("corpus resolves").1
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the `dsketch` binary on the corpus followed by `args`.
pub fn dsketch(args: &[&str]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dsketch"));
    let (sub, rest) = args.split_first().expect("a subcommand");
    cmd.arg(sub).args(corpus_files()).args(rest);
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

pub fn raw_dsketch(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_dsketch")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

/// Whether some isomorphism of contexts maps the statements of `a`
/// bijectively onto those of `b`.
pub fn sketches_isomorphic(a: &Sketch, b: &Sketch) -> bool {
    if a.statements().len() != b.statements().len() {
        return false;
    }
    enumerate_morphisms(a.context(), b.context())
        .into_iter()
        .filter(|m| m.is_isomorphism())
        .any(|m| SketchMorphism::new(a.clone(), b.clone(), m).is_ok())
}
