//! Drive the command-line interface in-process: write a scene file, classify
//! it, and construct its fixed point with a full trace. The standalone
//! `similitude` binary accepts the same commands.
//!
//! ```text
//! cargo run --example scene_cli
//! ```

use similitude::cli;

fn run(args: &[&str]) {
    println!("$ similitude {}", args.join(" "));
    let owned: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    let mut out = Vec::new();
    let code = cli::run(&owned, &mut out);
    print!("{}", String::from_utf8_lossy(&out));
    println!("(exit {code})\n");
}

fn main() {
    let scene = std::env::temp_dir().join("similitude-example-scene.json");
    std::fs::write(
        &scene,
        r#"{"correspondence": {
  "P": [0, 0], "Q": [4, 0], "R": [4, 2],
  "P'": [4, 0], "Q'": [4, 8], "R'": [0, 8]
}}"#,
    )
    .expect("write scene");
    let path = scene.to_str().unwrap();

    run(&["classify", path]);
    run(&["fixpoint", path, "--method", "algorithm1", "--trace"]);
    run(&["fixpoint", path, "--method", "algebraic"]);
}
