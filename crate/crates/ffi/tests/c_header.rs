//! Builds a small C program against the generated header and the static
//! library. Skipped (with a note) when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "wkbchain.h"

int main(void) {
    WkbChain *chain = NULL;
    if (wkb_chain_from_ramp(M_PI / 3.0, 2.0 * M_PI / 3.0, 20, 60, &chain) != WKB_STATUS_OK) return 1;
    WkbComplex r, t;
    if (wkb_chain_scatter(chain, WKB_VARIANT_EXACT, &r, &t) != WKB_STATUS_OK) return 2;
    printf("%.6f\n", hypot(t.re, t.im));
    wkb_chain_free(chain);
    if (wkb_chain_from_ramp(0.0, 1.0, 2, 10, &chain) != WKB_STATUS_INVALID_ARGUMENT) return 3;
    char msg[128];
    if (wkb_last_error_message(msg, sizeof msg) == 0) return 4;
    return 0;
}
"#;

fn compiler() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .map(String::from)
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<this test> -> target/<profile>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libwkbchain_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let work = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = work.join("ffi_smoke.c");
    let exe = work.join("ffi_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg("-std=c11")
        .arg("-D_DEFAULT_SOURCE")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    let t: f64 = text.trim().parse().unwrap();
    assert!(t > 1.0 && t < 2.0);
}
