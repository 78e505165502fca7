//! Writes a tensor-product frame to JSON, reads it back with full
//! verification and drives the command line on it.

use fourier_frames::cli::{self, read_frame_file, verify_frame, write_frame_file};
use fourier_frames::numerics::Tolerance;
use fourier_frames::projective::{qubit_frame, tensor_frame, Sign};

fn main() {
    let dir = std::env::temp_dir().join("fourier-frames-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two_qubits.json");

    let a = qubit_frame([Sign::Plus; 3]).unwrap();
    let b = qubit_frame([Sign::Plus, Sign::Plus, Sign::Minus]).unwrap();
    write_frame_file(&tensor_frame(&a, &b).unwrap(), &path).unwrap();

    let frame = read_frame_file(&path, Tolerance::default()).unwrap();
    println!("read {} with |G| = {}, d = {}", path.display(), frame.group().size(), frame.dim());
    for check in verify_frame(&frame, Tolerance::default()) {
        println!("  {:<14} {}  {}", check.name, if check.pass { "pass" } else { "FAIL" }, check.detail);
    }

    let p = path.to_str().unwrap();
    let code = cli::run(
        [
            "fourier-frames",
            "certify",
            "--frame",
            p,
            "--state",
            "random-density:1",
            "--out",
            dir.join("cert.json").to_str().unwrap(),
        ],
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    println!("certify exit code {code}");
}
