fn main() {
    println!("kicked-top CLI");
}
