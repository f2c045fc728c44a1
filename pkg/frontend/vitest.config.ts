import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    // every test drives the emulator through a child process
    testTimeout: 180_000,
    hookTimeout: 60_000,
  },
});
