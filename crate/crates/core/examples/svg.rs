//! Writes the linkage figure (null circle, coupler conic, null tangents and
//! joints) as SVG.
//!
//! `cargo run --example svg -- linkage.svg`, stdout without an argument.

use std::io::Write;

fn main() {
    let mut args = vec!["splitquat", "linkage", "t^2 - (2+j+2k)t + (1-2i+j+2k)", "--format", "svg"];
    let path = std::env::args().nth(1);
    if let Some(p) = &path {
        args.extend(["--out", p.as_str()]);
    }
    let mut out = Vec::new();
    let code = splitquat::cli::run(args, &mut out, &mut std::io::stderr());
    std::io::stdout().write_all(&out).expect("stdout");
    std::process::exit(code);
}
