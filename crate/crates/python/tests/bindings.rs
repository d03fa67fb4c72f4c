use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "pyextalg").unwrap();
        pyextalg::pyextalg(&m).unwrap();
        let globals = pyo3::types::PyDict::new(py);
        globals.set_item("ex", m).unwrap();
        if let Err(e) = py.run(code, Some(&globals), None) {
            e.print(py);
            panic!("python check failed");
        }
    });
}

#[test]
fn algebra_round_trip() {
    with_module(
        c"
a = ex.Algebra(2, 4)
assert a.dim == 21
assert a.bracket('e0*e1 + e2*e3', 'e0*e2 + e1*e3')[0][3] == '2'
assert a.ad_rank('e0*e1 + e2*e3') == 10
assert a.block_ranks('e0*e1', None)['powers'][-1]['total'] == 0
assert ex.normalize('e_1*e_0', 4) == '-e0*e1'
",
    );
}

#[test]
fn errors_become_value_errors() {
    with_module(
        c"
try:
    ex.Algebra(4, 4)
except ValueError:
    pass
else:
    raise AssertionError('k = n accepted')
try:
    ex.Algebra(2, 4).ad('e0*')
except ValueError as e:
    assert 'position 3' in str(e), str(e)
else:
    raise AssertionError('bad expression accepted')
",
    );
}
