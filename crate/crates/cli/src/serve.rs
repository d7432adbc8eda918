use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use axum::body::Body;
use axum::extract::{Path, Request};
use axum::http::{header, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use tower_http::services::ServeDir;

use rulecnl::langservice::handle;

use crate::{Fatal, Status};

pub fn router(ui_dir: Option<PathBuf>) -> Router {
    let mut app = Router::new().route("/v1/{endpoint}", post(api));
    app = match ui_dir {
        Some(dir) => app.nest_service("/ui", ServeDir::new(dir).append_index_html_on_directories(true)),
        None => app
            .route("/ui", get(no_ui))
            .route("/ui/", get(no_ui))
            .route("/ui/{*rest}", get(no_ui)),
    };
    app.fallback(not_found).layer(middleware::from_fn(log_request))
}

async fn api(Path(endpoint): Path<String>, body: String) -> Response {
    let path = format!("/v1/{endpoint}");
    let (status, value) = tokio::task::spawn_blocking(move || handle(&path, &body))
        .await
        .unwrap_or_else(|e| (500, serde_json::json!({ "error": e.to_string() })));
    let status = StatusCode::from_u16(status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, Json(value)).into_response()
}

async fn no_ui() -> Response {
    (
        StatusCode::NOT_FOUND,
        "editor UI not configured; start with --ui-dir <dir>\n",
    )
        .into_response()
}

async fn not_found(req: Request) -> Response {
    let body = serde_json::json!({ "error": format!("no endpoint {}", req.uri().path()) });
    (StatusCode::NOT_FOUND, Json(body)).into_response()
}

async fn log_request(req: Request<Body>, next: Next) -> Response {
    let method = req.method().clone();
    let uri = req.uri().path().to_string();
    let start = Instant::now();
    let mut response = next.run(req).await;
    log::info!(
        "{method} {uri} {} {:.1}ms",
        response.status().as_u16(),
        start.elapsed().as_secs_f64() * 1000.0
    );
    response
        .headers_mut()
        .entry(header::CACHE_CONTROL)
        .or_insert(header::HeaderValue::from_static("no-store"));
    response
}

pub fn run(host: &str, port: u16, ui_dir: Option<PathBuf>) -> Status {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Fatal(format!("cannot start runtime: {e}")))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| Fatal(format!("cannot listen on {host}:{port}: {e}")))?;
        let addr = listener.local_addr().map_err(|e| Fatal(e.to_string()))?;
        log::info!("listening on http://{addr}");
        axum::serve(listener, router(ui_dir))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
                log::info!("shutting down");
            })
            .await
            .map_err(|e| Fatal(format!("server error: {e}")))?;
        Ok(ExitCode::SUCCESS)
    })
}
