# dummy init to allow for relative imports in the test/ folder
