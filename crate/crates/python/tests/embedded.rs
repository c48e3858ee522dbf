use std::ffi::CString;

use gendet_py::gendet_module;
use pyo3::prelude::*;

fn run(code: &str) {
    pyo3::append_to_inittab!(gendet_module);
    Python::initialize();
    Python::attach(|py| {
        let code = CString::new(code).unwrap();
        if let Err(e) = py.run(&code, None, None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn bindings_round_trip() {
    run(r#"
import gendet
from fractions import Fraction
a = gendet.Matrix([[1, 0], [0, 1], [1, 1]], exact=True)
assert a.vdet() == [((1, 2), 1), ((1, 3), 1), ((2, 3), -1)]
assert a.detl_squared() == 3
assert gendet.Matrix([[1], [2], [3]], exact=True).gdet() == 2
s = gendet.solve(a, [2, 3, 6])
assert (s.status, s.column, s.blade) == ("inconsistent", 1, (2, 3))
assert gendet.solve(a, ["1/2", 0, Fraction(1, 2)]).x == [Fraction(1, 2), 0]
assert gendet.polygon_area([(0, 0), (2, 0), (0, 2)], exact=True) == 2
try:
    gendet.Matrix([[1, 2]]).gdet()
except gendet.DimensionError:
    pass
else:
    raise AssertionError
"#);
}
