fn main() {
    println!("rcflab");
}
