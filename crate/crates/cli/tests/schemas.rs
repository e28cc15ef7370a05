//! Every JSON output conforms to the schema shipped in `schemas/`.

use std::path::PathBuf;
use std::process::Command;

use jsonschema::{Retrieve, Uri, Validator};
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    root().join("data").join(name).to_string_lossy().into_owned()
}

/// Resolves references by file name inside `schemas/`.
struct LocalSchemas;

impl Retrieve for LocalSchemas {
    fn retrieve(&self, uri: &Uri<String>) -> Result<Value, Box<dyn std::error::Error + Send + Sync>> {
        let name = uri.path().as_str().rsplit('/').next().unwrap_or_default().to_string();
        let text = std::fs::read_to_string(root().join("schemas").join(&name))?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn validator(name: &str) -> Validator {
    let text = std::fs::read_to_string(root().join("schemas").join(name)).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::options()
        .with_base_uri(format!("https://schemas.atam.invalid/{name}"))
        .with_retriever(LocalSchemas)
        .build(&schema)
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(schema: &str, instance: &Value) {
    let v = validator(schema);
    let errors: Vec<String> = v.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema}: {errors:#?}\n{instance:#}");
}

fn run(args: &[&str]) -> Value {
    let o = Command::new(env!("CARGO_BIN_EXE_atam")).args(args).output().unwrap();
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn system_documents() {
    for name in ["nds.json", "coop.json", "domino.json", "ray.json"] {
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
        assert_valid("system.schema.json", &doc);
    }
    let minimal = serde_json::json!({"tile_types": [{"name": "A"}], "seed": {"tile": "A"}});
    assert_valid("system.schema.json", &minimal);
    let extra = serde_json::json!({"tile_types": [{"name": "A", "x": 1}], "seed": {"tile": "A"}});
    assert!(!validator("system.schema.json").is_valid(&extra));
}

#[test]
fn shape_documents() {
    for doc in [
        serde_json::json!({"points": [[0, 0], [1, 0]]}),
        serde_json::json!({"grid": "#.\n##"}),
        serde_json::json!({"grid": ["#.", "##"], "origin": [2, 3]}),
    ] {
        assert_valid("shape.schema.json", &doc);
    }
    assert!(!validator("shape.schema.json").is_valid(&serde_json::json!({"grid": "#x"})));
}

#[test]
fn command_outputs() {
    let nds = data("nds.json");
    let coop = data("coop.json");
    let domino = data("domino.shape");
    assert_valid("report.schema.json", &run(&["explore", "--system", &coop, "--bound", "2x2+0+0"]));
    assert_valid("report.schema.json", &run(&["explore", "--system", &data("ray.json"), "--bound", "3x1+0+0"]));
    assert_valid("report.schema.json", &run(&["explore", "--system", &nds, "--bound", "2x1+0+0"]));
    assert_valid("verdict.schema.json", &run(&["verify", "strict", "--system", &nds, "--shape", &domino]));
    assert_valid("verdict.schema.json", &run(&["verify", "directed", "--system", &nds, "--bound", "2x1+0+0"]));
    assert_valid("verdict.schema.json", &run(&["verify", "directed", "--system", &data("ray.json"), "--bound", "3x1+0+0"]));
    assert_valid(
        "verdict.schema.json",
        &run(&["verify", "strict", "--system", &data("ray.json"), "--shape", &data("line3.shape")]),
    );
    assert_valid(
        "verdict.schema.json",
        &run(&["verify", "strict", "--system", &data("domino.json"), "--shape", &data("ell.shape")]),
    );
    assert_valid("min-result.schema.json", &run(&["minimize", "--shape", &domino, "--kmax", "2"]));
    assert_valid("min-result.schema.json", &run(&["minimize", "--shape", &data("ell.shape"), "--kmax", "1"]));
    assert_valid(
        "min-result.schema.json",
        &run(&["minimize", "--shape", &domino, "--kmax", "2", "--max-systems", "3"]),
    );
    assert_valid("gap.schema.json", &run(&["gap", "--shape", &data("point.shape"), "--kmax", "1"]));
    assert_valid("sim.schema.json", &run(&["sim", "--system", &coop, "--rng-seed", "1"]));

    // Referenced definitions are enforced, not skipped.
    let mut bad = run(&["verify", "directed", "--system", &nds, "--bound", "2x1+0+0"]);
    bad["witness"]["sequences"][0][0]["point"] = serde_json::json!([1]);
    assert!(!validator("verdict.schema.json").is_valid(&bad));
}

#[tokio::test]
async fn session_state() {
    use atam_cli::server::{router, AppState};
    use axum::body::Body;
    use axum::http::Request;
    use http_body_util::BodyExt;
    use tower::ServiceExt;

    let app = router(AppState::new(std::time::Duration::from_secs(60)));
    let req = Request::post("/api/sessions")
        .body(Body::from(std::fs::read_to_string(data("nds.json")).unwrap()))
        .unwrap();
    let body = app.oneshot(req).await.unwrap().into_body().collect().await.unwrap().to_bytes();
    let state: Value = serde_json::from_slice(&body).unwrap();
    assert_valid("session-state.schema.json", &state);
}
