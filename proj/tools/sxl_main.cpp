#include "sxl/adequacy.hpp"
int main() { return 0; }
