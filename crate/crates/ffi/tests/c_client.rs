//! Compiles the C example against the generated header and, when the static
//! library is present, links and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn staticlib() -> Option<PathBuf> {
    // CARGO_TARGET_TMPDIR is <target>/tmp; the library sits in <target>/<profile>.
    let target = Path::new(env!("CARGO_TARGET_TMPDIR")).parent()?.to_path_buf();
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libpolyval_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn header_is_valid_c_and_cxx() {
    let include = crate_dir().join("include");
    let header = include.join("polyval.h");
    assert!(header.exists(), "build script writes the header");
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .status()
            .expect("a C toolchain is installed");
        assert!(status.success(), "{compiler} rejects the header");
    }
}

#[test]
fn c_example_links_and_runs() {
    let dir = crate_dir();
    let src = dir.join("examples/smoke.c");
    let include = dir.join("include");
    let Some(lib) = staticlib() else {
        let status = Command::new("cc")
            .args(["-fsyntax-only", "-Wall", "-Werror"])
            .arg("-I")
            .arg(&include)
            .arg(&src)
            .status()
            .unwrap();
        assert!(status.success());
        eprintln!("static library not built yet; compiled the example without linking");
        return;
    };
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("polyval_smoke");
    let status = Command::new("cc")
        .args(["-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .status()
        .unwrap();
    assert!(status.success(), "link failed");
    let out = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}\n{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout.contains("slope -√3/2"), "{stdout}");
    assert!(stdout.contains("parse error:"), "{stdout}");
}
