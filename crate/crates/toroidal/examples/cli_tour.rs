//! Drives the command-line front end in-process and prints the JSON of a small W.

fn main() {
    let code = toroidal::cli::run([
        "toroidal", "--n", "2", "--r", "1,1", "--max-boxes", "2", "--seed", "1", "w", "--i", "1", "--j", "2", "--k", "2",
    ]);
    println!("exit code {}", code);
}
