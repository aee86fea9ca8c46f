#pragma once

#define ERKIT_VERSION "0.1.0"
#define ERKIT_CONFIG_VERSION 1
