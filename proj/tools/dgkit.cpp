#include <cstdio>

int main() {
    std::printf("dgkit: cli not wired up yet\n");
    return 2;
}
