//! Running JSON tasks through the library, as the CLI does.
use acvf::task::run_text;

fn main() {
    let tasks = r#"[
      {"field": "padic:3", "op": "val", "x": "9/2"},
      {"field": "padic:5", "op": "beta", "x": "1", "y": "26"},
      {"field": "laurent:2", "op": "smith_normal_form", "A": [[{"num": [0, 1]}, {"num": [1]}], [{"num": [1, 1]}, {"num": [0, 0, 1]}]]},
      {"field": "padic:3", "op": "no_such_op"}
    ]"#;
    let (out, code) = run_text(tasks);
    println!("{out}exit code {code}");
}
