//! Drives the command-line front end in-process, including the error paths.

fn run(args: &[&str]) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["splitquat"];
    argv.extend_from_slice(args);
    let code = splitquat::cli::run(argv, &mut out, &mut err);
    println!("$ splitquat {}", args.join(" "));
    print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    println!("(exit {code})\n");
}

fn main() {
    let c = "t^2 - (2+j+2k)t + (1-2i+j+2k)";
    run(&["factor", c]);
    run(&["norm", c, "--format", "json"]);
    run(&["verify", c, "--samples", "4", "--t-range", "-1/2:5"]);
    run(&["factor", "t^2+1"]);
    run(&["factor", "--algebra", "hamilton", "(t-i)(t-i)", "--format", "json"]);
    run(&["factor", "t^2 + (1"]);
}
