# keeps the tests directory importable for the shared reference helpers
