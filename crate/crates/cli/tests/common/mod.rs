#![allow(dead_code)]

use std::ffi::OsStr;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use two_transit::shape::SimplicialComplex;
use two_transit::transition1::Transition1;
use two_transit::transition2::Cocycle2;
use two_transit::{CoverShape, CrossedModule, FiniteGroup, RightAction};
use two_transit_cli::wire::*;

pub struct Workdir {
    dir: TempDir,
}

impl Workdir {
    pub fn new() -> Self {
        Workdir {
            dir: TempDir::new().expect("temporary directory"),
        }
    }

    pub fn raw(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).expect("write fixture");
        path
    }

    pub fn write(&self, name: &str, m: &Manifest) -> PathBuf {
        self.raw(name, &serde_json::to_string_pretty(m).unwrap())
    }

    pub fn group(&self, name: &str, g: &FiniteGroup) -> PathBuf {
        self.write(name, &Manifest::new(Kind::Group, &GroupJson::from(g)))
    }

    pub fn action(&self, name: &str, a: &RightAction) -> PathBuf {
        self.write(name, &Manifest::new(Kind::Action, &ActionJson::from(a)))
    }

    pub fn xm(&self, name: &str, xm: &CrossedModule) -> PathBuf {
        self.write(name, &Manifest::new(Kind::CrossedModule, &CrossedModuleJson::from(xm)))
    }

    pub fn shape(&self, name: &str, s: &CoverShape) -> PathBuf {
        self.write(name, &Manifest::new(Kind::Shape, &ShapeJson::from(s)))
    }

    pub fn transition(&self, name: &str, t: &Transition1) -> PathBuf {
        self.write(name, &Manifest::new(Kind::Transition1, &Transition1Json::from(t)))
    }

    pub fn cocycle(&self, name: &str, c: &Cocycle2) -> PathBuf {
        self.write(name, &Manifest::new(Kind::Cocycle2, &Cocycle2Json::from(c)))
    }
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }

    pub fn error_kind(&self) -> String {
        self.json()["error"]["kind"].as_str().unwrap_or_default().to_string()
    }
}

pub fn run_with_env<I, S>(args: I, env: &[(&str, &str)]) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<OsStr>,
{
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_two-transit"));
    cmd.args(args).env_remove(two_transit_cli::BUDGET_VAR);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("run two-transit");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn run<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<OsStr>,
{
    run_with_env(args, &[])
}

pub fn triangle() -> CoverShape {
    CoverShape::complex(&SimplicialComplex::hollow_triangle())
}

pub fn sphere() -> CoverShape {
    CoverShape::complex(&SimplicialComplex::boundary_of_simplex(3))
}
