#include <iostream>

int main() {
    std::cout << "wavecouple: pipeline not wired yet\n";
    return 0;
}
