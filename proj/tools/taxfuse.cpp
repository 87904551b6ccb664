// Placeholder main; the full CLI lands once the library modules are in place.
int main() { return 0; }
