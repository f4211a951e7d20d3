"""
Run the spectrum API with auto-reload for development.

    STURMGHOST_PORT=8100 python scripts/run_server.py
"""
import os

import uvicorn

if __name__ == "__main__":
    uvicorn.run(
        "src.api.server:app",
        host=os.environ.get("STURMGHOST_HOST", "127.0.0.1"),
        port=int(os.environ.get("STURMGHOST_PORT", "8000")),
        reload=True,
        reload_dirs=["src"],
        log_level=os.environ.get("STURMGHOST_LOG_LEVEL", "info").lower(),
    )
