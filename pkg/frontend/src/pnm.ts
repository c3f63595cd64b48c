// Binary PPM (P6) / PGM (P5) marshaling, maxval 255. This is the wire format
// images cross in and out of the hdtile CLI with; round trips are lossless.

export interface RawImage {
  width: number;
  height: number;
  channels: 1 | 3;
  data: Uint8Array;
}

export function encodePnm(
  data: Uint8Array,
  width: number,
  height: number,
  channels: number,
): Uint8Array {
  if (channels !== 1 && channels !== 3) {
    throw new Error(`channels must be 1 or 3, got ${channels}`);
  }
  if (width < 1 || height < 1) {
    throw new Error(`image dimensions must be positive, got ${width}x${height}`);
  }
  const expected = width * height * channels;
  if (data.length !== expected) {
    throw new Error(
      `data length ${data.length} does not match ${width}x${height}x${channels} = ${expected}`,
    );
  }
  const magic = channels === 3 ? "P6" : "P5";
  const header = Buffer.from(`${magic}\n${width} ${height}\n255\n`, "ascii");
  return Buffer.concat([header, data]);
}

const WHITESPACE = new Set([0x20, 0x09, 0x0a, 0x0d, 0x0b, 0x0c]);

function skipSeparators(bytes: Uint8Array, pos: number): number {
  const start = pos;
  while (pos < bytes.length) {
    if (WHITESPACE.has(bytes[pos])) {
      pos += 1;
    } else if (bytes[pos] === 0x23 /* '#' */) {
      while (pos < bytes.length && bytes[pos] !== 0x0a && bytes[pos] !== 0x0d) {
        pos += 1;
      }
    } else {
      break;
    }
  }
  if (pos === start) {
    throw new Error(`expected whitespace at byte ${pos}`);
  }
  return pos;
}

function readInt(bytes: Uint8Array, pos: number): [number, number] {
  const start = pos;
  while (pos < bytes.length && bytes[pos] >= 0x30 && bytes[pos] <= 0x39) {
    pos += 1;
  }
  if (pos === start) {
    throw new Error(`expected an integer at byte ${start}`);
  }
  return [Number(Buffer.from(bytes.subarray(start, pos)).toString("ascii")), pos];
}

export function decodePnm(bytes: Uint8Array): RawImage {
  const magic = Buffer.from(bytes.subarray(0, 2)).toString("ascii");
  let channels: 1 | 3;
  if (magic === "P6") {
    channels = 3;
  } else if (magic === "P5") {
    channels = 1;
  } else {
    throw new Error(`unsupported magic ${JSON.stringify(magic)}, expected P6 or P5`);
  }

  let pos = 2;
  const fields: number[] = [];
  for (let i = 0; i < 3; i += 1) {
    pos = skipSeparators(bytes, pos);
    const [value, next] = readInt(bytes, pos);
    fields.push(value);
    pos = next;
  }
  const [width, height, maxval] = fields;
  if (width < 1 || height < 1) {
    throw new Error(`dimensions must be positive, got ${width}x${height}`);
  }
  if (maxval !== 255) {
    throw new Error(`unsupported maxval ${maxval}, only 255 is handled`);
  }
  if (pos >= bytes.length || !WHITESPACE.has(bytes[pos])) {
    throw new Error("expected a single whitespace byte before the pixel payload");
  }
  pos += 1;

  const expected = width * height * channels;
  if (bytes.length - pos < expected) {
    throw new Error(`truncated payload: expected ${expected} bytes, got ${bytes.length - pos}`);
  }
  if (bytes.length - pos > expected) {
    throw new Error(`trailing data after pixel payload at byte ${pos + expected}`);
  }
  return { width, height, channels, data: bytes.subarray(pos, pos + expected) };
}
