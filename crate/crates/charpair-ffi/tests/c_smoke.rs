//! Compiles and runs a small C program against the generated header and
//! the static library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const MAIN_C: &str = r#"
#include <stdio.h>
#include "charpair.h"

int main(void) {
    CharpairBundle *b = charpair_bundle_example();
    if (b == NULL) return 1;

    CharpairBundle *reduced = NULL;
    if (charpair_bundle_reduce_mod(b, 2, &reduced) != CharpairStatus_Ok) return 2;

    char *disc = NULL;
    if (charpair_discriminant(reduced, &disc) != CharpairStatus_Ok) return 3;
    printf("disc=%s\n", disc);
    charpair_string_free(disc);

    char *table = NULL;
    if (charpair_fiber_table_json(reduced, &table) != CharpairStatus_Ok) return 4;
    printf("table=%s\n", table);
    charpair_string_free(table);

    char *err = charpair_last_error();
    if (err != NULL) return 5;

    charpair_bundle_free(reduced);
    charpair_bundle_free(b);
    printf("done\n");
    return 0;
}
"#;

#[test]
fn a_c_client_compiles_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let staticlib = manifest
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("target")
        .join(if cfg!(debug_assertions) { "debug" } else { "release" })
        .join("libcharpair_ffi.a");
    assert!(
        staticlib.exists(),
        "static library missing at {}",
        staticlib.display()
    );

    let dir = std::env::temp_dir().join(format!("charpair-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let exe = dir.join("demo");
    std::fs::write(&src, MAIN_C).unwrap();

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .output()
        .unwrap();
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(
        stdout.contains("disc=u^4*v*w+u^3*v^2*w"),
        "{stdout}"
    );
    assert!(stdout.contains(r#""point":"(0:1:0)""#), "{stdout}");
    assert!(stdout.contains(r#""fiber":"double-line""#), "{stdout}");
    assert!(stdout.trim_end().ends_with("done"), "{stdout}");

    std::fs::remove_dir_all(&dir).ok();
}
