use std::fmt::Write as _;
use std::path::Path;

use kam_atlas::logring::{apply_mk, expand_operator, leading_constant, LogElement};
use num_rational::BigRational;

fn render() -> String {
    let mut s = String::new();
    for n in 2..=5 {
        writeln!(s, "expand_operator({n}) = {}", expand_operator(n).unwrap()).unwrap();
    }
    for (m, k) in [(1, 1), (1, 3), (2, 2), (2, 6), (3, 4)] {
        let lc = leading_constant(m, k).unwrap();
        writeln!(s, "leading_constant({m}, {k}) = {}", lc.constant).unwrap();
        writeln!(s, "residual({m}, {k}) = {}", lc.residual).unwrap();
    }
    let f = LogElement::monomial(BigRational::new(3.into(), 2.into()), 2, 1)
        .unwrap()
        .add(&LogElement::monomial(BigRational::from_integer((-1).into()), -1, 0).unwrap());
    writeln!(s, "f = {f}").unwrap();
    writeln!(s, "f' = {}", f.derivative().unwrap()).unwrap();
    writeln!(s, "L f = {}", f.euler().unwrap()).unwrap();
    writeln!(s, "L(D L) f = {}", apply_mk(1, 1, &f).unwrap()).unwrap();
    s
}

#[test]
fn canonical_text_matches_golden() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/logring.txt");
    let got = render();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert_eq!(got, want);
}
