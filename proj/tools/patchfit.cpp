#include <cstdio>
int main(){ std::puts("patchfit"); return 0; }
