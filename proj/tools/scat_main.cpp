#include <cstdio>

int main() {
    std::puts("scat: placeholder");
    return 0;
}
