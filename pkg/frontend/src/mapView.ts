// Top-down map projection between ENU metres and screen pixels.

import type { EnuPoint } from "./types";

export interface ScreenPoint {
  x: number;
  y: number;
}

export class MapProjection {
  constructor(
    public centerEast = 0,
    public centerNorth = 0,
    public metersPerPixel = 1,
  ) {}

  toScreen(p: { east: number; north: number }, width: number, height: number): ScreenPoint {
    return {
      x: width / 2 + (p.east - this.centerEast) / this.metersPerPixel,
      y: height / 2 - (p.north - this.centerNorth) / this.metersPerPixel,
    };
  }

  toEnu(x: number, y: number, width: number, height: number, up = 0): EnuPoint {
    return {
      east: this.centerEast + (x - width / 2) * this.metersPerPixel,
      north: this.centerNorth - (y - height / 2) * this.metersPerPixel,
      up,
    };
  }

  pan(dxPixels: number, dyPixels: number): void {
    this.centerEast -= dxPixels * this.metersPerPixel;
    this.centerNorth += dyPixels * this.metersPerPixel;
  }

  zoom(factor: number): void {
    this.metersPerPixel /= factor;
  }
}
