use g2g::oracle::references;

#[test]
fn every_reference_constant_is_reproduced_by_its_oracle() {
    for r in references() {
        let (v, dev) = r.reproduce().unwrap();
        println!(
            "{:<32} frozen {:>+.15e} oracle {:>+.15e} dev {:.1e} (tol {:.0e})",
            r.name, r.value, v, dev, r.oracle_tol
        );
        assert!(dev <= r.oracle_tol, "{}: oracle {v} vs frozen {}", r.name, r.value);
    }
}
