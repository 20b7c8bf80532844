import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    // heatmap fixtures are 200x200 grids; parsing plus render can exceed the 5 s default
    testTimeout: 60000,
    pool: "forks",
  },
});
