# incremental build: submodules are imported directly
