fn main() {
    let cfg = wittconic::suite::SuiteConfig::default();
    let t = std::time::Instant::now();
    match wittconic::suite::run_suite(&cfg) {
        Ok(report) => {
            print!("{}", report.render(true));
            eprintln!("total: {:?}", t.elapsed());
            std::process::exit(if report.passed() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
