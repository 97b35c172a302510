use std::ffi::CString;

use pyo3::prelude::*;
use pyakzeta::pyakzeta;

fn python(code: &str) {
    Python::attach(|py| {
        let code = CString::new(code).unwrap();
        if let Err(e) = py.run(&code, None, None) {
            e.display(py);
            panic!("python code failed");
        }
    });
}

fn init() {
    static ONCE: std::sync::Once = std::sync::Once::new();
    ONCE.call_once(|| {
        pyo3::append_to_inittab!(pyakzeta);
        Python::initialize();
    });
}

#[test]
fn index_and_word_operations() {
    init();
    python(
        r#"
import pyakzeta as z
k = z.Index("(1,2)")
assert k.dual() == z.Index("(3)")
assert z.Index([2, 1]).hoffman_dual() == z.Index("(1,2)")
assert (k.weight, k.depth) == (3, 2)
assert k.word() == "110"
assert len(z.indices_of_weight(4, False)) == 8
assert z.shuffle("1", "1") == {"11": "2/1"}
assert z.word_dual("110") == "100"
try:
    z.Index("(2,1)").dual()
    raise AssertionError("non-admissible dual accepted")
except ValueError:
    pass
"#,
    );
}

#[test]
fn evaluation_and_verification() {
    init();
    python(
        r#"
import math
import pyakzeta as z
ev = z.Evaluator(128)
b = ev.zeta(z.Index("(2)"))
assert abs(float(b) - math.pi ** 2 / 6) < 1e-15
assert b.radius < 1e-30
assert abs(float(ev.t(z.Index("(2)"))) - math.pi ** 2 / 4) < 1e-15
r = z.verify("cor-main", {"k": "(2)", "m": "1"}, ev)
assert r["pass"], r
p = z.Poset.chain(z.Index("(2)"))
assert abs(float(ev.poset_integral(p)) - math.pi ** 2 / 6) < 1e-15
s = z.run_suite("combinatorics", ev, 6)
assert s["pass"], s
"#,
    );
}
