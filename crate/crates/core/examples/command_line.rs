//! Drive the command-line front end in-process.

use orthantkit::cli::run;

fn main() {
    let dir = std::env::temp_dir().join("orthantkit-example");
    std::fs::create_dir_all(&dir).unwrap();
    let c5 = dir.join("c5.txt");
    std::fs::write(&c5, "a b\nb c\nc d\nd e\ne a\n").unwrap();
    let path = c5.to_str().unwrap();

    let out = run(["orthantkit", "flats", "classify", path]);
    println!("exit {}\n{}", out.code, out.stdout);
    let out = run(["orthantkit", "develop", "--radius", "1", path]);
    println!("develop exit {}, {} bytes of JSON", out.code, out.stdout.len());
    let out = run(["orthantkit", "flats", "classify", "--strict", path]);
    println!("strict classify exit {}", out.code);
}
