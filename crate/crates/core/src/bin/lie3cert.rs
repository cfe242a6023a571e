fn main() {
    // CLI wired up after the verifier module lands.
}
