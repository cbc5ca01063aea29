fn main() {
    let t = std::time::Instant::now();
    for (name, run) in matchgame::verify::suites() {
        let s = std::time::Instant::now();
        let r = run().unwrap();
        if !r.passed() { print!("{}", r.to_text()); }
        println!("{name}: {} {:?}", r.passed(), s.elapsed());
    }
    println!("{:?}", t.elapsed());
}
