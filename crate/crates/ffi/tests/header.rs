use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/sketchlr.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct SklrSketch SklrSketch;",
        "SKLR_STATUS_OK = 0",
        "SKLR_STATUS_PANIC = 5",
        "sklr_sketch_new(",
        "sklr_sketch_update(",
        "sklr_sketch_add_entry(",
        "sklr_sketch_low_rank(",
        "sklr_sketch_fixed_rank(",
        "sklr_sketch_dims(",
        "sklr_sketch_free(",
        "sklr_split(",
        "sklr_f_factor(",
        "sklr_last_error(",
        "sklr_status_str(",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let lib = dir.join("libsketchlr_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        panic!("static library not found next to the test binary");
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include "sketchlr.h"
#include <math.h>
#include <stdio.h>

int main(void) {
    SklrSketch *s = NULL;
    double a[12], out[12];
    size_t k = 0, l = 0;
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 3; j++) a[i * 3 + j] = (i + 1.0) * (j - 1.5);
    if (sklr_sketch_new(4, 3, 2, 3, SKLR_FIELD_REAL, 5, 0, &s) != SKLR_STATUS_OK) return 1;
    if (sklr_sketch_update(s, a, 12, 1.0, 0.0, 1.0, 0.0) != SKLR_STATUS_OK) return 2;
    if (sklr_sketch_fixed_rank(s, 1, out, 12) != SKLR_STATUS_OK) return 3;
    for (int t = 0; t < 12; t++)
        if (fabs(out[t] - a[t]) > 1e-9) return 4;
    if (sklr_sketch_fixed_rank(s, 1, out, 11) != SKLR_STATUS_DIMENSION_MISMATCH) return 5;
    if (sklr_last_error()[0] == '\0') return 6;
    if (sklr_split(SKLR_SPLIT_RULE_DECAY, 5, 48, SKLR_FIELD_COMPLEX, &k, &l) != SKLR_STATUS_OK || k != 16 || l != 32) return 7;
    sklr_sketch_free(s);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
