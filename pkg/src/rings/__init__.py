# Ring backends and finite-dimensional algebra modules
